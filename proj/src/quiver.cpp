#include "qgt/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qgt {

void Quiver::finalize() {
    vertex_index.clear();
    arrow_index.clear();
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (!vertex_index.emplace(vertices[i], int(i)).second)
            throw ValidationError("duplicate vertex id '" + vertices[i] + "'");
    }
    out_arrows.assign(vertices.size(), {});
    in_arrows.assign(vertices.size(), {});
    for (size_t i = 0; i < arrows.size(); ++i) {
        const Arrow& a = arrows[i];
        if (!arrow_index.emplace(a.id, int(i)).second)
            throw ValidationError("duplicate arrow id '" + a.id + "'");
        if (a.src < 0 || a.src >= int(vertices.size()) || a.tgt < 0 || a.tgt >= int(vertices.size()))
            throw ValidationError("arrow '" + a.id + "' has endpoints outside the vertex set");
        out_arrows[size_t(a.src)].push_back(int(i));
        in_arrows[size_t(a.tgt)].push_back(int(i));
    }

    arrow_lex_rank.assign(arrows.size(), 0);
    std::vector<int> order(arrows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return arrows[size_t(a)].id < arrows[size_t(b)].id; });
    for (size_t r = 0; r < order.size(); ++r) arrow_lex_rank[size_t(order[r])] = int(r);

    two_regular = !vertices.empty();
    for (size_t v = 0; v < vertices.size(); ++v)
        if (out_arrows[v].size() != 2 || in_arrows[v].size() != 2) two_regular = false;

    // Undirected connectivity.
    connected = true;
    if (!vertices.empty()) {
        std::vector<char> seen(vertices.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a : out_arrows[size_t(v)])
                if (!seen[size_t(tgt(a))]) { seen[size_t(tgt(a))] = 1; stack.push_back(tgt(a)); }
            for (int a : in_arrows[size_t(v)])
                if (!seen[size_t(src(a))]) { seen[size_t(src(a))] = 1; stack.push_back(src(a)); }
        }
        connected = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }

    bar.assign(arrows.size(), -1);
    star.assign(arrows.size(), -1);
    if (two_regular) {
        for (size_t v = 0; v < vertices.size(); ++v) {
            bar[size_t(out_arrows[v][0])] = out_arrows[v][1];
            bar[size_t(out_arrows[v][1])] = out_arrows[v][0];
            star[size_t(in_arrows[v][0])] = in_arrows[v][1];
            star[size_t(in_arrows[v][1])] = in_arrows[v][0];
        }
    }
}

int Quiver::vertex(const std::string& id) const {
    auto it = vertex_index.find(id);
    if (it == vertex_index.end()) throw ValidationError("unknown vertex '" + id + "'");
    return it->second;
}

int Quiver::arrow(const std::string& id) const {
    auto it = arrow_index.find(id);
    if (it == arrow_index.end()) throw ValidationError("unknown arrow '" + id + "'");
    return it->second;
}

QuiverCheck validate_quiver(const Quiver& q) {
    QuiverCheck r;
    std::set<std::string> vids(q.vertices.begin(), q.vertices.end());
    if (vids.size() != q.vertices.size()) {
        r.ok = false;
        r.problems.push_back("duplicate vertex ids");
    }
    std::set<std::string> aids;
    for (const Arrow& a : q.arrows) {
        if (!aids.insert(a.id).second) {
            r.ok = false;
            r.problems.push_back("duplicate arrow id '" + a.id + "'");
        }
        if (a.src < 0 || a.src >= int(q.vertices.size()) || a.tgt < 0 || a.tgt >= int(q.vertices.size())) {
            r.ok = false;
            r.problems.push_back("arrow '" + a.id + "' has dangling endpoints");
        }
    }
    if (!q.two_regular) r.problems.push_back("not 2-regular");
    if (!q.connected) r.problems.push_back("not connected");
    return r;
}

std::vector<std::vector<int>> ArrowPermutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(map.size(), 0);
    for (size_t start = 0; start < map.size(); ++start) {
        if (seen[start]) continue;
        std::vector<int> cyc;
        int a = int(start);
        while (!seen[size_t(a)]) {
            seen[size_t(a)] = 1;
            cyc.push_back(a);
            a = map[size_t(a)];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

bool TriangulationQuiver::is_border_vertex(int v) const {
    for (int a : border_loops)
        if (q.src(a) == v) return true;
    return false;
}

TriangulationQuiver validate_triangulation(const Quiver& q, const std::vector<std::vector<int>>& f_cycles) {
    if (q.n_vertices() < 3)
        throw ValidationError("triangulation quiver needs at least 3 vertices");
    if (!q.two_regular)
        throw ValidationError("triangulation quiver must be 2-regular (condition (a))");
    if (!q.connected)
        throw ValidationError("triangulation quiver must be connected");

    TriangulationQuiver tq;
    tq.q = q;
    tq.f.map.assign(q.n_arrows(), -1);
    std::vector<char> covered(q.n_arrows(), 0);
    for (const auto& cyc : f_cycles) {
        if (cyc.empty()) throw ValidationError("empty f-cycle");
        for (size_t k = 0; k < cyc.size(); ++k) {
            int a = cyc[k];
            int b = cyc[(k + 1) % cyc.size()];
            if (a < 0 || a >= int(q.n_arrows())) throw ValidationError("f-cycle names an unknown arrow");
            if (covered[size_t(a)]) throw ValidationError("arrow '" + q.aname(a) + "' appears in two f-cycles");
            covered[size_t(a)] = 1;
            tq.f.map[size_t(a)] = b;
        }
    }
    for (size_t a = 0; a < q.n_arrows(); ++a)
        if (!covered[a])
            throw ValidationError("f does not cover arrow '" + q.aname(int(a)) + "'");

    for (size_t a = 0; a < q.n_arrows(); ++a) {
        int fa = tq.f(int(a));
        if (q.src(fa) != q.tgt(int(a)))
            throw ValidationError("f violates condition (b) at arrow '" + q.aname(int(a)) +
                                  "': s(f(a)) != t(a)");
    }
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        if (tq.f(tq.f(tq.f(int(a)))) != int(a))
            throw ValidationError("f violates condition (c) at arrow '" + q.aname(int(a)) +
                                  "': f^3 != id");
    }

    tq.g.map.assign(q.n_arrows(), -1);
    for (size_t a = 0; a < q.n_arrows(); ++a)
        tq.g.map[a] = q.bar[size_t(tq.f(int(a)))];

    // Canonical g-orbits: start each at its lex-least arrow, sort by that id.
    std::vector<char> seen(q.n_arrows(), 0);
    for (size_t start = 0; start < q.n_arrows(); ++start) {
        if (seen[start]) continue;
        std::vector<int> orbit;
        int a = int(start);
        do {
            seen[size_t(a)] = 1;
            orbit.push_back(a);
            a = tq.g(a);
        } while (a != int(start));
        int best = 0;
        for (size_t k = 1; k < orbit.size(); ++k)
            if (q.arrow_lex_rank[size_t(orbit[k])] < q.arrow_lex_rank[size_t(orbit[size_t(best)])])
                best = int(k);
        std::rotate(orbit.begin(), orbit.begin() + best, orbit.end());
        tq.g_orbits.push_back(std::move(orbit));
    }
    std::sort(tq.g_orbits.begin(), tq.g_orbits.end(), [&](const auto& x, const auto& y) {
        return q.aname(x[0]) < q.aname(y[0]);
    });
    tq.g_orbit_of.assign(q.n_arrows(), -1);
    for (size_t o = 0; o < tq.g_orbits.size(); ++o)
        for (int a : tq.g_orbits[o]) tq.g_orbit_of[size_t(a)] = int(o);

    for (size_t a = 0; a < q.n_arrows(); ++a)
        if (tq.f(int(a)) == int(a)) {
            if (q.src(int(a)) != q.tgt(int(a)))
                throw ValidationError("f fixes the non-loop arrow '" + q.aname(int(a)) + "'");
            tq.border_loops.push_back(int(a));
        }

    // Consistency of the two involutions along g-orbits: stepping n_a - 1
    // times along g from a lands on f^2(bar(a)).
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        int x = int(a);
        for (int k = 0; k < tq.n_alpha(int(a)) - 1; ++k) x = tq.g(x);
        if (x != tq.f(tq.f(q.bar[a])))
            throw ValidationError("internal f/g orbit inconsistency at arrow '" + q.aname(int(a)) + "'");
    }

    return tq;
}

std::vector<int> border_vertices(const TriangulationQuiver& tq) {
    std::vector<int> out;
    for (int a : tq.border_loops) out.push_back(tq.q.src(a));
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(SpecialShape s) {
    switch (s) {
        case SpecialShape::Markov: return "Markov";
        case SpecialShape::Tetrahedral: return "Tetrahedral";
        case SpecialShape::TriangleDisk: return "TriangleDisk";
        default: return "Other";
    }
}

SpecialShape recognize_special(const TriangulationQuiver& tq) {
    const Quiver& q = tq.q;
    if (q.n_vertices() == 3 && q.n_arrows() == 6) {
        bool all_double = true;
        for (size_t v = 0; v < 3 && all_double; ++v) {
            const auto& outs = q.out_arrows[v];
            if (q.tgt(outs[0]) != q.tgt(outs[1]) || q.tgt(outs[0]) == int(v)) all_double = false;
        }
        if (all_double) return SpecialShape::Markov;
    }
    if (q.n_vertices() == 6 && q.n_arrows() == 12) {
        auto f_cycles = tq.f.cycles();
        bool f_ok = f_cycles.size() == 4;
        for (const auto& c : f_cycles)
            if (c.size() != 3) f_ok = false;
        bool g_ok = tq.g_orbits.size() == 4;
        for (const auto& c : tq.g_orbits)
            if (c.size() != 3) g_ok = false;
        if (f_ok && g_ok) return SpecialShape::Tetrahedral;
    }
    if (q.n_vertices() == 3 && tq.border_loops.size() == 3) {
        auto f_cycles = tq.f.cycles();
        size_t triangles = 0;
        for (const auto& c : f_cycles)
            if (c.size() == 3) ++triangles;
        if (triangles == 1 && f_cycles.size() == 4) return SpecialShape::TriangleDisk;
    }
    return SpecialShape::Other;
}

std::string export_dot(const Quiver& q, const std::vector<std::vector<int>>* f_cycles) {
    static const char* palette[] = {"black",     "firebrick",  "royalblue", "forestgreen",
                                    "darkorange", "purple",    "teal",      "saddlebrown"};
    std::vector<int> color_of(q.n_arrows(), -1);
    if (f_cycles) {
        for (size_t c = 0; c < f_cycles->size(); ++c)
            for (int a : (*f_cycles)[c]) color_of[size_t(a)] = int(c);
    }
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto& v : q.vertices) os << "  \"" << v << "\";\n";
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        os << "  \"" << q.vname(q.src(int(a))) << "\" -> \"" << q.vname(q.tgt(int(a)))
           << "\" [label=\"" << q.aname(int(a)) << "\"";
        if (color_of[a] >= 0)
            os << ", color=" << palette[size_t(color_of[a]) % (sizeof(palette) / sizeof(*palette))];
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace qgt
