#include "qgt/presentation.hpp"

#include "qgt/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qgt {

bool Path::composable(const Quiver& q) const {
    if (source < 0 || size_t(source) >= q.n_vertices()) return false;
    int at = source;
    for (int a : arrows) {
        if (a < 0 || size_t(a) >= q.n_arrows()) return false;
        if (q.src(a) != at) return false;
        at = q.tgt(a);
    }
    return true;
}

std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vname(p.source);
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += "*";
        s += q.aname(p.arrows[i]);
    }
    return s;
}

static bool path_less(const Quiver& q, const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    for (size_t i = 0; i < a.arrows.size(); ++i) {
        int ra = q.arrow_lex_rank[a.arrows[i]], rb = q.arrow_lex_rank[b.arrows[i]];
        if (ra != rb) return ra < rb;
    }
    return a.source < b.source;
}

void PathExpr::add(const Quiver& q, const Field& F, const Path& p, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), p,
                               [&](const auto& t, const Path& x) { return path_less(q, t.first, x); });
    if (it != terms.end() && it->first == p) {
        it->second = F.add(it->second, coeff);
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.insert(it, {p, coeff});
    }
}

std::string path_expr_to_string(const Quiver& q, const Field& F, const PathExpr& e) {
    if (e.terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, coeff] : e.terms) {
        Scalar c = coeff;
        bool neg = false;
        // Prefer "- term" over "+ (-1)*term" for readability over Q.
        if (F.descriptor().kind == FieldKind::Rationals && c.num < 0) {
            neg = true;
            c = F.neg(c);
        }
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        if (!(c == F.one())) s += F.to_string(c) + "*";
        s += path_to_string(q, p);
    }
    return s;
}

long long WeightData::m_of(const TriangulationQuiver& tq, int arrow) const {
    auto it = m.find(tq.g_orbit_rep(arrow));
    if (it == m.end()) throw ValidationError("missing multiplicity for g-orbit of arrow " + tq.q.aname(arrow));
    return it->second;
}

Scalar WeightData::c_of(const TriangulationQuiver& tq, int arrow) const {
    auto it = c.find(tq.g_orbit_rep(arrow));
    if (it == c.end()) throw ValidationError("missing parameter for g-orbit of arrow " + tq.q.aname(arrow));
    return it->second;
}

void validate_weights(const TriangulationQuiver& tq, const Field& F, const WeightData& w) {
    (void)F;
    for (const auto& orbit : tq.g_orbits) {
        int rep = orbit.front();
        auto mi = w.m.find(rep);
        if (mi == w.m.end())
            throw ValidationError("no multiplicity given for g-orbit of " + tq.q.aname(rep));
        if (mi->second < 1)
            throw ValidationError("multiplicity of g-orbit of " + tq.q.aname(rep) + " must be >= 1");
        auto ci = w.c.find(rep);
        if (ci == w.c.end())
            throw ValidationError("no parameter given for g-orbit of " + tq.q.aname(rep));
        if (ci->second.is_zero())
            throw ValidationError("parameter of g-orbit of " + tq.q.aname(rep) + " must be nonzero");
        long long n = long(orbit.size());
        if (mi->second * n < 3)
            throw ValidationError("g-orbit of " + tq.q.aname(rep) + " has m*n = " +
                                  std::to_string(mi->second * n) + " < 3");
    }
    for (const auto& [rep, mult] : w.m) {
        (void)mult;
        if (tq.g_orbit_rep(rep) != rep)
            throw ValidationError("multiplicity keyed by non-representative arrow " + tq.q.aname(rep));
    }
    for (const auto& [rep, cc] : w.c) {
        (void)cc;
        if (tq.g_orbit_rep(rep) != rep)
            throw ValidationError("parameter keyed by non-representative arrow " + tq.q.aname(rep));
    }
    for (const auto& [v, bb] : w.b) {
        (void)bb;
        if (v < 0 || size_t(v) >= tq.q.n_vertices() || !tq.is_border_vertex(v))
            throw ValidationError("deformation scalar at non-border vertex");
    }
}

Path g_chain(const TriangulationQuiver& tq, int arrow, int length) {
    Path p;
    p.source = tq.q.src(arrow);
    p.arrows.reserve(size_t(length));
    int a = arrow;
    for (int i = 0; i < length; ++i) {
        p.arrows.push_back(a);
        a = tq.g.map[size_t(a)];
    }
    return p;
}

Path a_path(const TriangulationQuiver& tq, const WeightData& w, int arrow) {
    long long mn = w.m_of(tq, arrow) * tq.n_alpha(arrow);
    return g_chain(tq, arrow, int(mn) - 1);
}

Path b_path(const TriangulationQuiver& tq, const WeightData& w, int arrow) {
    long long mn = w.m_of(tq, arrow) * tq.n_alpha(arrow);
    return g_chain(tq, arrow, int(mn));
}

static std::vector<PathExpr> relations_impl(const TriangulationQuiver& tq, const Field& F,
                                            const WeightData& w, bool deformed) {
    validate_weights(tq, F, w);
    const Quiver& q = tq.q;
    std::vector<int> order(size_t(q.n_arrows()));
    for (size_t a = 0; a < q.n_arrows(); ++a) order[size_t(q.arrow_lex_rank[a])] = int(a);

    std::vector<PathExpr> out;
    for (int a : order) {
        int fa = tq.f.map[size_t(a)];
        int bar = q.bar[size_t(a)];
        PathExpr comm;
        Path lhs{q.src(a), {a, fa}};
        comm.add(q, F, lhs, F.one());
        comm.add(q, F, a_path(tq, w, bar), F.neg(w.c_of(tq, bar)));
        if (deformed && fa == a) {
            auto bi = w.b.find(q.src(a));
            if (bi != w.b.end() && !bi->second.is_zero())
                comm.add(q, F, b_path(tq, w, bar), F.neg(bi->second));
        }
        out.push_back(std::move(comm));
    }
    for (int a : order) {
        int fa = tq.f.map[size_t(a)];
        int gfa = tq.g.map[size_t(fa)];
        PathExpr zero;
        zero.add(q, F, Path{q.src(a), {a, fa, gfa}}, F.one());
        out.push_back(std::move(zero));
    }
    return out;
}

std::vector<PathExpr> weighted_relations(const TriangulationQuiver& tq, const Field& F, const WeightData& w) {
    return relations_impl(tq, F, w, false);
}

std::vector<PathExpr> deformed_relations(const TriangulationQuiver& tq, const Field& F, const WeightData& w) {
    for (const auto& [v, bb] : w.b)
        if (!bb.is_zero() && !tq.is_border_vertex(v))
            throw ValidationError("deformation scalar at non-border vertex " + tq.q.vname(v));
    return relations_impl(tq, F, w, true);
}

static Presentation presentation_impl(const TriangulationQuiver& tq, const FieldDescriptor& fd,
                                      const WeightData& w, bool deformed) {
    Field F(fd);
    Presentation p;
    p.quiver = tq.q;
    p.field = fd;
    p.relations = deformed ? deformed_relations(tq, F, w) : weighted_relations(tq, F, w);
    std::vector<std::vector<int>> cycles;
    for (const auto& cyc : tq.f.cycles()) cycles.push_back(cyc);
    p.f_cycles = std::move(cycles);
    return p;
}

Presentation weighted_presentation(const TriangulationQuiver& tq, const FieldDescriptor& fd, const WeightData& w) {
    return presentation_impl(tq, fd, w, false);
}

Presentation deformed_presentation(const TriangulationQuiver& tq, const FieldDescriptor& fd, const WeightData& w) {
    return presentation_impl(tq, fd, w, true);
}

void validate_presentation(const Presentation& p) {
    Field F(p.field);
    for (size_t r = 0; r < p.relations.size(); ++r) {
        const auto& rel = p.relations[r];
        std::string where = "relation " + std::to_string(r + 1);
        if (rel.terms.empty()) throw ValidationError(where + " is empty");
        int src = -1, tgt = -1;
        for (const auto& [path, coeff] : rel.terms) {
            if (coeff.is_zero()) throw ValidationError(where + " has a zero coefficient");
            if (!path.composable(p.quiver)) throw ValidationError(where + " contains a non-composable path");
            if (path.length() < 2)
                throw ValidationError(where + " contains a path of length < 2; relations must live in the square of the arrow ideal");
            if (src < 0) {
                src = path.source;
                tgt = path.target(p.quiver);
            } else if (path.source != src || path.target(p.quiver) != tgt) {
                throw ValidationError(where + " mixes non-parallel paths");
            }
        }
    }
    if (p.f_cycles) validate_triangulation(p.quiver, *p.f_cycles);
}

} // namespace qgt
