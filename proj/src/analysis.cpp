#include "qgt/analysis.hpp"

#include "qgt/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qgt {

std::string to_string(MinRelKind k) {
    switch (k) {
        case MinRelKind::C: return "C";
        case MinRelKind::Z: return "Z";
        default: return "irregular";
    }
}

namespace {

std::vector<int> lex_sorted(const Quiver& q, std::vector<int> arrows) {
    std::sort(arrows.begin(), arrows.end(), [&](int a, int b) {
        return q.arrow_lex_rank[size_t(a)] < q.arrow_lex_rank[size_t(b)];
    });
    return arrows;
}

using PathKey = std::pair<int, int>; // the two arrows of a length-2 path

PathKey key_of(const Path& p) { return {p.arrows[0], p.arrows[1]}; }

// Unordered set of the paths in one census entry, for matching.
std::multiset<PathKey> entry_keys(const VertexCensus& vc, const MinimalRelation& rel) {
    std::multiset<PathKey> out;
    for (int pos : rel.path_pos) out.insert(key_of(vc.paths[size_t(pos)]));
    return out;
}

bool has_z_entry(const VertexCensus& vc, const PathKey& k) {
    for (const auto& rel : vc.relations)
        if (rel.kind == MinRelKind::Z && entry_keys(vc, rel) == std::multiset<PathKey>{k})
            return true;
    return false;
}

bool has_c_entry(const VertexCensus& vc, const PathKey& k1, const PathKey& k2) {
    std::multiset<PathKey> want{k1, k2};
    for (const auto& rel : vc.relations)
        if (rel.kind == MinRelKind::C && entry_keys(vc, rel) == want) return true;
    return false;
}

std::string path_key_string(const Quiver& q, const PathKey& k) {
    return q.aname(k.first) + "*" + q.aname(k.second);
}

void run_propagation(const Quiver& q, CensusReport& rep) {
    // Class at a vertex forces matching classes on the length-2 paths that
    // continue its minimal relations back into the vertex.
    for (const auto& vc : rep.vertices) {
        if (vc.klass == "irregular") continue;
        int i = vc.vertex;

        struct Arm {
            int u, w; // the length-2 path (u, w)
            int end;  // its target vertex
            int entry;
        };
        std::vector<Arm> arms;
        std::vector<int> entry_end(vc.relations.size(), -1);
        bool shape_ok = true;
        for (size_t e = 0; e < vc.relations.size(); ++e) {
            for (int pos : vc.relations[e].path_pos) {
                const Path& p = vc.paths[size_t(pos)];
                Arm arm{p.arrows[0], p.arrows[1], p.target(q), int(e)};
                if (entry_end[e] == -1) entry_end[e] = arm.end;
                if (entry_end[e] != arm.end) shape_ok = false; // C arms must co-terminate
                arms.push_back(arm);
            }
        }
        if (!shape_ok) {
            rep.propagation_inconsistencies++;
            rep.propagation_notes.push_back("vertex " + q.vname(i) +
                                            ": commutativity pair does not co-terminate");
            continue;
        }

        std::vector<int> ins = lex_sorted(q, q.in_arrows[size_t(i)]);
        if (ins.size() != 2 || vc.relations.size() != 2) {
            rep.propagation_inconsistencies++;
            rep.propagation_notes.push_back("vertex " + q.vname(i) + ": unexpected census shape");
            continue;
        }

        // Assign one in-arrow per entry, source matching the entry's end.
        std::vector<std::vector<int>> assignments;
        for (int flip = 0; flip < 2; ++flip) {
            std::vector<int> d{ins[size_t(flip)], ins[size_t(1 - flip)]};
            if (q.src(d[0]) == entry_end[0] && q.src(d[1]) == entry_end[1])
                assignments.push_back(d);
        }
        if (assignments.empty()) {
            rep.propagation_inconsistencies++;
            rep.propagation_notes.push_back("vertex " + q.vname(i) +
                                            ": no in-arrow matches the relation targets");
            continue;
        }

        std::string first_failure;
        bool ok = false;
        for (const auto& d : assignments) {
            // Group continuations by the out-arrow they extend.
            std::vector<std::pair<int, PathKey>> cont; // (start vertex, path)
            std::vector<int> group_u;
            for (const Arm& arm : arms)
                cont.emplace_back(arm.u, PathKey{arm.w, d[size_t(arm.entry)]});
            std::vector<int> us;
            for (const auto& c : cont)
                if (std::find(us.begin(), us.end(), c.first) == us.end()) us.push_back(c.first);
            bool all_found = true;
            std::string failure;
            for (int u : us) {
                std::vector<PathKey> ks;
                for (const auto& c : cont)
                    if (c.first == u) ks.push_back(c.second);
                const VertexCensus& at = rep.vertices[size_t(q.tgt(u))];
                bool found = false;
                if (ks.size() == 1) found = has_z_entry(at, ks[0]);
                else if (ks.size() == 2) found = has_c_entry(at, ks[0], ks[1]);
                if (!found) {
                    all_found = false;
                    failure = "expected ";
                    failure += ks.size() == 1 ? "zero class " : "commutativity pair ";
                    for (size_t t = 0; t < ks.size(); ++t)
                        failure += (t ? ", " : "") + path_key_string(q, ks[t]);
                    failure += " at vertex " + q.vname(q.tgt(u));
                    break;
                }
            }
            if (all_found) {
                ok = true;
                break;
            }
            if (first_failure.empty()) first_failure = failure;
        }
        if (!ok) {
            rep.propagation_inconsistencies++;
            rep.propagation_notes.push_back("vertex " + q.vname(i) + ": " + first_failure);
        }
    }
}

} // namespace

CensusReport relation_census(const FiniteDimAlgebra& A) {
    const Quiver& q = A.quiver();
    if (!q.two_regular)
        throw ValidationError("minimal-relation census requires a 2-regular quiver");
    const Field& F = A.field();
    CensusReport rep;
    rep.all_dims_ok = true;
    rep.all_two_independent = true;

    // Count length-2 basis words into each vertex (for the in-side check).
    std::vector<int> in2(q.n_vertices(), 0);
    for (const auto& w : A.basis())
        if (w.length() == 2) in2[size_t(Path{w.vertex, w.arrows}.target(q))]++;

    for (size_t v = 0; v < q.n_vertices(); ++v) {
        VertexCensus vc;
        vc.vertex = int(v);
        vc.out = lex_sorted(q, q.out_arrows[v]);
        for (int a : vc.out)
            if (q.tgt(a) == int(v)) vc.has_loop = true;
        vc.has_double_arrow = q.tgt(vc.out[0]) == q.tgt(vc.out[1]);
        for (int a : vc.out)
            for (int b : lex_sorted(q, q.out_arrows[size_t(q.tgt(a))]))
                vc.paths.push_back(Path{int(v), {a, b}});

        // Columns: the length-2 words of the local basis at v.
        std::vector<int> cols;
        int off = A.vertex_offset(int(v));
        for (int k = 0; k < A.vertex_dim(int(v)); ++k)
            if (A.basis()[size_t(off + k)].length() == 2) cols.push_back(k);
        vc.out_dim_ok = cols.size() == 2;
        vc.in_dim_ok = in2[v] == 2;

        Mat images;
        for (const Path& p : vc.paths) {
            Vec nf = A.nf_path(p);
            Vec row(cols.size(), F.zero());
            for (size_t c = 0; c < cols.size(); ++c) row[c] = nf[size_t(cols[c])];
            images.push_back(std::move(row));
        }
        vc.image_rank = cols.empty() ? 0 : rank(images, F);

        Mat kernel = left_kernel(images, F);
        for (const auto& krow : kernel) {
            MinimalRelation rel;
            for (size_t p = 0; p < krow.size(); ++p) {
                if (krow[p].is_zero()) continue;
                rel.path_pos.push_back(int(p));
                rel.coeffs.push_back(krow[p]);
            }
            if (rel.path_pos.size() == 1) {
                rel.kind = MinRelKind::Z;
            } else if (rel.path_pos.size() == 2 &&
                       !is_zero_vec(images[size_t(rel.path_pos[0])]) &&
                       !is_zero_vec(images[size_t(rel.path_pos[1])])) {
                rel.kind = MinRelKind::C;
            } else {
                rel.kind = MinRelKind::Irregular;
            }
            vc.relations.push_back(std::move(rel));
        }

        int cs = 0, zs = 0;
        bool irr = vc.relations.size() != 2;
        for (const auto& rel : vc.relations) {
            if (rel.kind == MinRelKind::C) cs++;
            else if (rel.kind == MinRelKind::Z) zs++;
            else irr = true;
        }
        vc.klass = irr ? "irregular" : std::string(size_t(cs), 'C') + std::string(size_t(zs), 'Z');
        vc.two_independent = vc.image_rank == 2 && kernel.size() == 2;

        rep.all_dims_ok = rep.all_dims_ok && vc.out_dim_ok && vc.in_dim_ok;
        rep.all_two_independent = rep.all_two_independent && vc.two_independent;
        rep.vertices.push_back(std::move(vc));
    }

    run_propagation(q, rep);
    return rep;
}

DimsCheck jj_dims_check(const FiniteDimAlgebra& A) {
    const Quiver& q = A.quiver();
    DimsCheck out;
    out.pass = true;
    std::vector<int> out2(q.n_vertices(), 0), in2(q.n_vertices(), 0);
    for (const auto& w : A.basis()) {
        if (w.length() != 2) continue;
        out2[size_t(w.vertex)]++;
        in2[size_t(Path{w.vertex, w.arrows}.target(q))]++;
    }
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        if (out2[v] == 2 && in2[v] == 2) continue;
        out.pass = false;
        out.offenders.push_back("vertex " + q.vname(int(v)) + ": outgoing " +
                                std::to_string(out2[v]) + ", incoming " + std::to_string(in2[v]) +
                                " (expected 2 and 2)");
    }
    return out;
}

TriangulationSearch find_triangulation(const FiniteDimAlgebra& A, bool enumerate_all) {
    TriangulationSearch out;
    const Quiver& q = A.quiver();
    CensusReport census;
    try {
        census = relation_census(A);
    } catch (const ValidationError&) {
        return out;
    }
    size_t n = q.n_arrows();

    // Partner candidates: continuations of each arrow inside minimal relations.
    std::vector<std::vector<int>> part(n);
    for (const auto& vc : census.vertices)
        for (const auto& rel : vc.relations) {
            if (rel.kind == MinRelKind::Irregular) continue;
            for (int pos : rel.path_pos) {
                const Path& p = vc.paths[size_t(pos)];
                part[size_t(p.arrows[0])].push_back(p.arrows[1]);
            }
        }
    for (auto& ps : part) {
        std::sort(ps.begin(), ps.end(), [&](int a, int b) {
            return q.arrow_lex_rank[size_t(a)] > q.arrow_lex_rank[size_t(b)];
        });
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return q.arrow_lex_rank[size_t(a)] < q.arrow_lex_rank[size_t(b)]; });

    std::vector<int> assign(n, -1), inv(n, -1);
    bool enumerate = enumerate_all && n <= 16;
    bool done = false;

    // The maximal assigned chain through `a` must still fit inside a cycle
    // of length 1 or 3.
    auto chain_ok = [&](int a) {
        int start = a;
        for (size_t guard = 0; guard <= n; ++guard) {
            if (inv[size_t(start)] < 0 || inv[size_t(start)] == a) {
                if (inv[size_t(start)] == a) start = a; // closed cycle; walk from a
                break;
            }
            start = inv[size_t(start)];
        }
        int len = 0, cur = start;
        while (assign[size_t(cur)] >= 0) {
            cur = assign[size_t(cur)];
            ++len;
            if (cur == start) return len == 1 || len == 3;
            if (len >= 3) return false;
        }
        return len <= 2;
    };

    auto record = [&]() {
        std::vector<std::vector<int>> cycles;
        std::vector<char> seen(n, 0);
        for (int a : order) {
            if (seen[size_t(a)]) continue;
            std::vector<int> cyc;
            int cur = a;
            do {
                cyc.push_back(cur);
                seen[size_t(cur)] = 1;
                cur = assign[size_t(cur)];
            } while (cur != a);
            cycles.push_back(std::move(cyc));
        }
        if (!out.f_cycles) out.f_cycles = cycles;
        out.solutions_seen++;
        if (enumerate) out.all.push_back(std::move(cycles));
        else done = true;
    };

    std::function<void(size_t)> rec = [&](size_t k) {
        if (done) return;
        if (k == n) {
            record();
            return;
        }
        int a = order[k];
        for (int b : part[size_t(a)]) {
            if (done) return;
            if (inv[size_t(b)] >= 0) continue;
            if (q.src(b) != q.tgt(a)) continue;
            assign[size_t(a)] = b;
            inv[size_t(b)] = a;
            if (chain_ok(a)) rec(k + 1);
            assign[size_t(a)] = -1;
            inv[size_t(b)] = -1;
        }
    };
    if (n > 0) rec(0);
    if (!enumerate && out.f_cycles) out.solutions_seen = 1;
    return out;
}

std::optional<FittedWeights> fit_weights(const FiniteDimAlgebra& A, const TriangulationQuiver& tq) {
    const Quiver& q = tq.q;
    const Field& F = A.field();
    if (q.n_arrows() != A.quiver().n_arrows() || q.n_vertices() != A.quiver().n_vertices())
        return std::nullopt;

    WeightData w;
    long long dim_expected = 0;
    for (const auto& orbit : tq.g_orbits) {
        int rep = orbit[0];
        int n = int(orbit.size());
        int mn = 0;
        for (int k = 1; k <= A.max_word_length() + 1; ++k) {
            if (is_zero_vec(A.nf_path(g_chain(tq, rep, k)))) break;
            mn = k;
        }
        if (mn < 3 || mn % n != 0) return std::nullopt;
        w.m[rep] = mn / n;
        dim_expected += (long long)(mn / n) * n * n;
    }
    if (dim_expected != A.dimension()) return std::nullopt;

    for (size_t a = 0; a < q.n_arrows(); ++a) {
        int fa = tq.f(int(a));
        int bar = q.bar[a];
        int rep = tq.g_orbit_rep(bar);
        Vec lhs = A.nf_path(Path{q.src(int(a)), {int(a), fa}});
        Vec av = A.nf_path(a_path(tq, w, bar));
        Scalar c, b = F.zero();
        if (fa == int(a)) {
            Vec bv = A.nf_path(b_path(tq, w, bar));
            auto sol = solve_in_span(Mat{av, bv}, lhs, F);
            if (!sol) return std::nullopt;
            c = (*sol)[0];
            b = (*sol)[1];
        } else {
            auto sol = solve_in_span(Mat{av}, lhs, F);
            if (!sol) return std::nullopt;
            c = (*sol)[0];
        }
        if (c.is_zero()) return std::nullopt;
        auto it = w.c.find(rep);
        if (it == w.c.end()) w.c.emplace(rep, c);
        else if (!(it->second == c)) return std::nullopt;
        if (fa == int(a) && !b.is_zero()) w.b[q.src(int(a))] = b;
    }

    // Zero relations must already hold in normal form.
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        int fa = tq.f(int(a));
        Path p{q.src(int(a)), {int(a), fa, tq.g(fa)}};
        if (!is_zero_vec(A.nf_path(p))) return std::nullopt;
    }

    try {
        validate_weights(tq, F, w);
    } catch (const ValidationError&) {
        return std::nullopt;
    }

    FittedWeights out;
    out.weights = std::move(w);
    out.any_border_term = !out.weights.b.empty();
    return out;
}

GqtReport gqt_report(const FiniteDimAlgebra& A, int period_bound, int sym_trials,
                     unsigned long long seed) {
    const Quiver& q = A.quiver();
    GqtReport rep;
    rep.field = field_to_string(A.field().descriptor());
    rep.two_regular = q.two_regular;
    rep.connected = q.connected;
    rep.dimension = A.dimension();
    for (int v = 0; v < A.n_vertices(); ++v) rep.vertex_dims.push_back(A.vertex_dim(v));
    rep.cartan = A.cartan_matrix();
    rep.cartan_det = to_string_i128(A.cartan_determinant());

    SymmetricFormReport sym = symmetric_form(A, sym_trials, seed);
    rep.symmetric_witness = sym.witness_found;
    rep.symmetric_refuted = sym.refuted;
    rep.symmetric_detail = sym.detail;

    for (int v = 0; v < A.n_vertices(); ++v) {
        auto p = period_of_simple(A, v, period_bound);
        rep.simple_periods.push_back(p);
        rep.tube_ranks.push_back(p ? tube_rank_of_period(*p) : std::nullopt);
    }

    std::optional<CensusReport> census;
    if (rep.two_regular) {
        census = relation_census(A);
        rep.census_ran = true;
        rep.census_dims_ok = census->all_dims_ok;
        rep.census_two_independent = census->all_two_independent;
        rep.census_propagation_inconsistencies = census->propagation_inconsistencies;
        for (const auto& vc : census->vertices) rep.census_classes.push_back(vc.klass);
    }

    std::optional<TriangulationQuiver> tq;
    if (A.has_triangulation()) {
        tq = A.triangulation();
        rep.triangulation_found = true;
        rep.f_cycles = tq->f.cycles();
    } else if (rep.two_regular) {
        TriangulationSearch search = find_triangulation(A);
        if (search.f_cycles) {
            try {
                tq = validate_triangulation(q, *search.f_cycles);
                rep.triangulation_found = true;
                rep.f_cycles = search.f_cycles;
            } catch (const ValidationError&) {
            }
        }
    }

    if (tq) {
        auto fit = fit_weights(A, *tq);
        if (fit) {
            rep.family = fit->any_border_term ? "deformed" : "weighted";
            rep.fitted = std::move(fit);
        } else {
            bool all_cc = census.has_value() && !census->vertices.empty();
            if (census)
                for (const auto& vc : census->vertices) all_cc = all_cc && vc.klass == "CC";
            if (recognize_special(*tq) == SpecialShape::Tetrahedral && all_cc &&
                rep.dimension % 36 == 0)
                rep.family = "tetrahedral";
        }
    }

    if (!rep.two_regular) rep.violations.push_back("quiver is not 2-regular");
    if (!rep.connected) rep.violations.push_back("quiver is not connected");
    if (!rep.symmetric_witness) {
        std::string v = "no symmetric form witness";
        if (rep.symmetric_refuted) v += " (refuted: " + rep.symmetric_detail + ")";
        rep.violations.push_back(v);
    }
    for (int v = 0; v < A.n_vertices(); ++v) {
        const auto& p = rep.simple_periods[size_t(v)];
        if (p && *p == 4) continue;
        rep.violations.push_back("simple module at vertex " + q.vname(v) + " has period " +
                                 (p ? std::to_string(*p)
                                    : "none within bound " + std::to_string(period_bound)) +
                                 " (expected 4)");
    }
    if (!rep.census_ran || !rep.census_dims_ok || !rep.census_two_independent ||
        rep.census_propagation_inconsistencies > 0)
        rep.violations.push_back("minimal-relation census fails");

    rep.verdict = rep.violations.empty() ? "consistent with generalized quaternion type"
                                         : "violates: " + rep.violations.front();
    return rep;
}

} // namespace qgt
