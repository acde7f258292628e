#include "qgt/surface.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qgt {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = int(i);
    }
    int find(int x) {
        while (parent[size_t(x)] != x) {
            parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
            x = parent[size_t(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[size_t(find(a))] = find(b); }
};

/* Slot of an edge in a triangle: the side together with its two corner
 * endpoints, tail first.  Corners are numbered 3*triangle + position. */
struct Slot {
    int face;
    int tail;
    int head;
};

std::map<std::string, std::vector<Slot>> surface_slots(const Surface& s) {
    std::map<std::string, std::vector<Slot>> slots;
    for (size_t t = 0; t < s.triangles.size(); ++t) {
        const Triangle& tr = s.triangles[t];
        for (int k = 0; k < 3; ++k) {
            Slot slot{int(t), int(3 * t) + (k + 2) % 3, int(3 * t) + k};
            slots[tr.edges[size_t(k)]].push_back(slot);
        }
    }
    return slots;
}

long long count_components(const std::vector<std::pair<int, int>>& links) {
    std::map<int, int> ids;
    for (auto& [a, b] : links) {
        ids.emplace(a, int(ids.size()));
        ids.emplace(b, int(ids.size()));
    }
    UnionFind uf(ids.size());
    for (auto& [a, b] : links) uf.unite(ids[a], ids[b]);
    std::set<int> roots;
    for (auto& [node, id] : ids) roots.insert(uf.find(id));
    return (long long)roots.size();
}

bool two_colorable(size_t n_faces, const std::vector<std::pair<int, int>>& unequal) {
    std::vector<int> color(n_faces, 0);
    std::vector<std::vector<int>> adj(n_faces);
    for (auto& [a, b] : unequal) {
        if (a == b) return false; // a face glued to itself with matching direction
        adj[size_t(a)].push_back(b);
        adj[size_t(b)].push_back(a);
    }
    for (size_t start = 0; start < n_faces; ++start) {
        if (color[start] != 0) continue;
        color[start] = 1;
        std::vector<int> stack{int(start)};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int nb : adj[size_t(f)]) {
                if (color[size_t(nb)] == 0) {
                    color[size_t(nb)] = -color[size_t(f)];
                    stack.push_back(nb);
                } else if (color[size_t(nb)] == color[size_t(f)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

SurfaceCheck validate_surface(const Surface& s) {
    SurfaceCheck r;
    auto fail = [&](const std::string& msg) {
        r.ok = false;
        r.problems.push_back(msg);
    };

    std::set<std::string> edge_set(s.edges.begin(), s.edges.end());
    if (edge_set.size() != s.edges.size()) fail("duplicate edge ids");
    if (s.edges.size() < 3) fail("a triangulation needs at least 3 edges");

    std::map<std::string, int> slot_count;
    for (size_t t = 0; t < s.triangles.size(); ++t) {
        const Triangle& tr = s.triangles[t];
        std::string where = "triangle #" + std::to_string(t);
        if (tr.edges.size() != 3) {
            fail(where + " must list 3 edge slots");
            continue;
        }
        for (const auto& e : tr.edges)
            if (!edge_set.count(e)) fail(where + " uses unknown edge '" + e + "'");
        if (tr.self_folded) {
            if (tr.edges[0] != tr.edges[1] || tr.edges[0] == tr.edges[2])
                fail(where + ": self-folded triangle must repeat its folded edge and differ from the other edge");
        } else {
            if (tr.edges[0] == tr.edges[1] || tr.edges[1] == tr.edges[2] || tr.edges[0] == tr.edges[2])
                fail(where + ": ordinary triangle needs three distinct edges");
        }
        for (const auto& e : tr.edges) slot_count[e]++;
    }

    std::set<std::string> boundary_set(s.boundary.begin(), s.boundary.end());
    if (boundary_set.size() != s.boundary.size()) fail("duplicate boundary edges");
    for (const auto& e : s.boundary)
        if (!edge_set.count(e)) fail("boundary lists unknown edge '" + e + "'");

    for (const auto& e : s.edges) {
        int n = slot_count.count(e) ? slot_count[e] : 0;
        bool bnd = boundary_set.count(e) > 0;
        if (bnd && n != 1) fail("boundary edge '" + e + "' must lie in exactly one triangle slot, found " + std::to_string(n));
        if (!bnd && n != 2) fail("interior edge '" + e + "' must lie in exactly two triangle slots, found " + std::to_string(n));
    }
    return r;
}

TriangulationQuiver quiver_of_surface(const Surface& s) {
    SurfaceCheck chk = validate_surface(s);
    if (!chk.ok) throw ValidationError("invalid surface: " + chk.problems.front());

    Quiver q;
    q.vertices = s.edges;
    std::map<std::string, int> vid;
    for (size_t i = 0; i < s.edges.size(); ++i) vid[s.edges[i]] = int(i);

    std::vector<std::vector<int>> f_cycles;
    for (size_t t = 0; t < s.triangles.size(); ++t) {
        const Triangle& tr = s.triangles[t];
        std::vector<int> cyc;
        for (int k = 0; k < 3; ++k) {
            const std::string& a = tr.edges[size_t(k)];
            const std::string& b = tr.edges[size_t((k + 1) % 3)];
            std::string id = "a" + std::to_string(t) + "_" + a + "_" + b;
            cyc.push_back(int(q.arrows.size()));
            q.arrows.push_back(Arrow{id, vid[a], vid[b]});
        }
        f_cycles.push_back(std::move(cyc));
    }
    for (const auto& e : s.boundary) {
        std::vector<int> cyc{int(q.arrows.size())};
        q.arrows.push_back(Arrow{"bnd_" + e, vid[e], vid[e]});
        f_cycles.push_back(std::move(cyc));
    }
    q.finalize();
    return validate_triangulation(q, f_cycles);
}

CellComplexReport cell_complex_of_quiver(const TriangulationQuiver& tq) {
    const Quiver& q = tq.q;
    auto f_cycles = tq.f.cycles();

    std::vector<int> face_of(q.n_arrows(), -1);
    long long faces = 0;
    for (const auto& cyc : f_cycles) {
        if (cyc.size() != 3) continue;
        for (int a : cyc) face_of[size_t(a)] = int(faces);
        ++faces;
    }

    UnionFind corners(q.n_arrows());
    std::vector<std::pair<int, int>> unequal;   // face-orientation constraints
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        if (tq.is_border_vertex(int(v))) continue;
        const auto& outs = q.out_arrows[v];
        const auto& ins = q.in_arrows[v];
        corners.unite(outs[0], outs[1]);
        corners.unite(ins[0], ins[1]);
        unequal.emplace_back(face_of[size_t(ins[0])], face_of[size_t(ins[1])]);
    }

    std::set<int> classes;
    for (size_t a = 0; a < q.n_arrows(); ++a)
        if (face_of[a] >= 0) classes.insert(corners.find(int(a)));

    CellComplexReport r;
    r.vertices = (long long)classes.size();
    r.edges = (long long)q.n_vertices();
    r.faces = faces;
    r.euler_characteristic = r.vertices - r.edges + r.faces;
    r.orientable = two_colorable(size_t(faces), unequal);

    std::vector<std::pair<int, int>> boundary_links;
    for (int loop : tq.border_loops) {
        int v = q.src(loop);
        int in3 = -1;
        for (int a : q.in_arrows[size_t(v)])
            if (a != loop) in3 = a;
        boundary_links.emplace_back(corners.find(in3), corners.find(tq.f(in3)));
    }
    r.boundary_components = count_components(boundary_links);
    return r;
}

CellComplexReport cell_complex_of_surface(const Surface& s) {
    SurfaceCheck chk = validate_surface(s);
    if (!chk.ok) throw ValidationError("invalid surface: " + chk.problems.front());

    auto slots = surface_slots(s);
    UnionFind corners(3 * s.triangles.size());
    std::vector<std::pair<int, int>> unequal;
    std::vector<std::pair<int, int>> boundary_links;

    for (const auto& e : s.edges) {
        auto it = slots.find(e);
        const auto& sl = it == slots.end() ? std::vector<Slot>{} : it->second;
        if (sl.size() == 2) {
            corners.unite(sl[0].head, sl[1].head);
            corners.unite(sl[0].tail, sl[1].tail);
            unequal.emplace_back(sl[0].face, sl[1].face);
        }
    }
    for (const auto& e : s.boundary) {
        const Slot& slot = slots[e][0];
        boundary_links.emplace_back(corners.find(slot.tail), corners.find(slot.head));
    }

    std::set<int> classes;
    for (size_t c = 0; c < 3 * s.triangles.size(); ++c) classes.insert(corners.find(int(c)));

    CellComplexReport r;
    r.vertices = (long long)classes.size();
    r.edges = (long long)s.edges.size();
    r.faces = (long long)s.triangles.size();
    r.euler_characteristic = r.vertices - r.edges + r.faces;
    r.orientable = two_colorable(s.triangles.size(), unequal);
    r.boundary_components = count_components(boundary_links);
    return r;
}

} // namespace qgt
