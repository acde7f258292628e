#include "qgt/families.hpp"

#include "qgt/errors.hpp"

#include <algorithm>
#include <tuple>

namespace qgt::families {

namespace {

Quiver make_quiver(std::vector<std::string> vertices,
                   std::vector<std::tuple<std::string, std::string, std::string>> arrows) {
    Quiver q;
    q.vertices = std::move(vertices);
    std::map<std::string, int> vid;
    for (size_t i = 0; i < q.vertices.size(); ++i) vid[q.vertices[i]] = int(i);
    for (auto& [id, s, t] : arrows) q.arrows.push_back(Arrow{id, vid.at(s), vid.at(t)});
    q.finalize();
    return q;
}

std::vector<std::vector<int>> cycles_by_name(const Quiver& q,
                                             const std::vector<std::vector<std::string>>& names) {
    std::vector<std::vector<int>> out;
    for (const auto& cyc : names) {
        std::vector<int> c;
        for (const auto& a : cyc) c.push_back(q.arrow(a));
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

TriangulationQuiver markov_quiver() {
    Quiver q = make_quiver({"1", "2", "3"},
                           {{"alpha", "1", "2"},
                            {"sigma", "1", "2"},
                            {"gamma", "2", "3"},
                            {"beta", "2", "3"},
                            {"delta", "3", "1"},
                            {"rho", "3", "1"}});
    return validate_triangulation(q, cycles_by_name(q, {{"alpha", "gamma", "delta"}, {"sigma", "beta", "rho"}}));
}

Surface markov_surface() {
    Surface s;
    s.edges = {"1", "2", "3"};
    s.triangles = {Triangle{false, {"1", "2", "3"}}, Triangle{false, {"1", "2", "3"}}};
    return s;
}

TriangulationQuiver triangle_disk_quiver() {
    Quiver q = make_quiver({"1", "2", "3"},
                           {{"eps", "1", "1"},
                            {"alpha", "1", "2"},
                            {"eta", "2", "2"},
                            {"beta", "2", "3"},
                            {"mu", "3", "3"},
                            {"gamma", "3", "1"}});
    return validate_triangulation(
        q, cycles_by_name(q, {{"alpha", "beta", "gamma"}, {"eps"}, {"eta"}, {"mu"}}));
}

Surface triangle_disk_surface() {
    Surface s;
    s.edges = {"1", "2", "3"};
    s.triangles = {Triangle{false, {"1", "2", "3"}}};
    s.boundary = {"1", "2", "3"};
    return s;
}

TriangulationQuiver torus_crosscap_quiver() {
    Quiver q = make_quiver({"1", "2", "3", "4", "5", "6"},
                           {{"nu", "1", "2"},
                            {"sigma", "1", "4"},
                            {"xi", "2", "4"},
                            {"mu", "2", "6"},
                            {"alpha", "3", "3"},
                            {"beta", "3", "6"},
                            {"delta", "4", "1"},
                            {"eta", "4", "5"},
                            {"omega", "5", "1"},
                            {"theta", "5", "2"},
                            {"gamma", "6", "3"},
                            {"rho", "6", "5"}});
    return validate_triangulation(q, cycles_by_name(q, {{"alpha", "beta", "gamma"},
                                                        {"rho", "theta", "mu"},
                                                        {"omega", "sigma", "eta"},
                                                        {"nu", "xi", "delta"}}));
}

Surface torus_crosscap_surface() {
    Surface s;
    s.edges = {"1", "2", "3", "4", "5", "6"};
    s.triangles = {Triangle{false, {"1", "2", "4"}},
                   Triangle{false, {"1", "4", "5"}},
                   Triangle{false, {"5", "2", "6"}},
                   Triangle{true, {"3", "3", "6"}}};
    return s;
}

TriangulationQuiver tetrahedral_quiver() {
    Quiver q = make_quiver({"1", "2", "3", "4", "5", "6"},
                           {{"nu", "1", "6"},
                            {"delta", "1", "5"},
                            {"eps", "2", "5"},
                            {"rho", "2", "6"},
                            {"alpha", "3", "1"},
                            {"sigma", "3", "2"},
                            {"gamma", "4", "1"},
                            {"beta", "4", "2"},
                            {"xi", "5", "3"},
                            {"eta", "5", "4"},
                            {"omega", "6", "4"},
                            {"mu", "6", "3"}});
    return validate_triangulation(q, cycles_by_name(q, {{"delta", "eta", "gamma"},
                                                        {"rho", "omega", "beta"},
                                                        {"eps", "xi", "sigma"},
                                                        {"nu", "mu", "alpha"}}));
}

Surface tetrahedral_surface() {
    Surface s;
    s.edges = {"1", "2", "3", "4", "5", "6"};
    s.triangles = {Triangle{false, {"1", "5", "4"}},
                   Triangle{false, {"2", "5", "3"}},
                   Triangle{false, {"2", "6", "4"}},
                   Triangle{false, {"1", "6", "3"}}};
    return s;
}

std::vector<std::string> family_names() {
    return {"markov", "triangle-disk", "torus-crosscap", "tetrahedral"};
}

TriangulationQuiver named_quiver(const std::string& name) {
    if (name == "markov") return markov_quiver();
    if (name == "triangle-disk") return triangle_disk_quiver();
    if (name == "torus-crosscap") return torus_crosscap_quiver();
    if (name == "tetrahedral") return tetrahedral_quiver();
    throw ValidationError("unknown family '" + name + "' (expected one of: markov, triangle-disk, torus-crosscap, tetrahedral)");
}

Surface named_surface(const std::string& name) {
    if (name == "markov") return markov_surface();
    if (name == "triangle-disk") return triangle_disk_surface();
    if (name == "torus-crosscap") return torus_crosscap_surface();
    if (name == "tetrahedral") return tetrahedral_surface();
    throw ValidationError("unknown family '" + name + "'");
}

WeightData uniform_weights(const TriangulationQuiver& tq, long long m, const Scalar& c) {
    WeightData w;
    for (const auto& orbit : tq.g_orbits) {
        w.m[orbit.front()] = m;
        w.c[orbit.front()] = c;
    }
    return w;
}

WeightData torus_crosscap_weights(const TriangulationQuiver& tq,
                                  long long p, long long q, long long r, long long s,
                                  const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    WeightData w;
    for (const auto& orbit : tq.g_orbits) {
        long long mult;
        Scalar par;
        switch (orbit.size()) {
        case 1: mult = p; par = a; break;
        case 2: mult = q; par = b; break;
        case 3: mult = r; par = c; break;
        case 6: mult = s; par = d; break;
        default: throw ValidationError("quiver does not have orbit sizes 1, 2, 3, 6");
        }
        w.m[orbit.front()] = mult;
        w.c[orbit.front()] = par;
    }
    return w;
}

Presentation tetrahedral_presentation(const FieldDescriptor& fd, long long m, const Scalar& lambda) {
    if (m < 1) throw ValidationError("tetrahedral multiplicity must be >= 1");
    Field F(fd);
    TriangulationQuiver tq = tetrahedral_quiver();
    const Quiver& q = tq.q;

    auto f = [&](int a) { return tq.f(a); };
    auto g = [&](int a) { return tq.g(a); };
    auto bar = [&](int a) { return q.bar[size_t(a)]; };

    // Repetitions of the f-triple a, f(a), f^2(a), then the listed tail.
    auto pumped = [&](int a, long long reps, std::vector<int> tail) {
        Path p;
        p.source = q.src(a);
        for (long long i = 0; i < reps; ++i) {
            p.arrows.push_back(a);
            p.arrows.push_back(f(a));
            p.arrows.push_back(f(f(a)));
        }
        for (int t : tail) p.arrows.push_back(t);
        return p;
    };

    // The deformation attaches to the three relations whose right side
    // starts in the g-orbit of eta.
    std::vector<int> deformed = {q.arrow("gamma"), q.arrow("rho"), q.arrow("xi")};

    std::vector<int> order(size_t(q.n_arrows()));
    for (size_t a = 0; a < q.n_arrows(); ++a) order[size_t(q.arrow_lex_rank[a])] = int(a);

    Presentation p;
    p.quiver = q;
    p.field = fd;
    std::vector<std::vector<int>> cycles;
    for (const auto& cyc : tq.f.cycles()) cycles.push_back(cyc);
    p.f_cycles = std::move(cycles);

    for (int a : order) {
        PathExpr rel;
        rel.add(q, F, Path{q.src(a), {a, f(a)}}, F.one());
        rel.add(q, F, Path{q.src(a), {bar(a), g(bar(a))}}, F.neg(F.one()));
        if (!lambda.is_zero() && std::find(deformed.begin(), deformed.end(), a) != deformed.end())
            rel.add(q, F, pumped(bar(a), m - 1, {bar(a), g(bar(a))}), F.neg(lambda));
        p.relations.push_back(std::move(rel));
    }
    for (int a : order) {
        PathExpr rel;
        rel.add(q, F, pumped(a, m - 1, {a, f(a), g(f(a))}), F.one());
        p.relations.push_back(std::move(rel));
    }
    validate_presentation(p);
    return p;
}

} // namespace qgt::families
