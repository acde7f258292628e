#pragma once

#include "qgt/families.hpp"
#include "qgt/surface.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace qgt::testutil {

/* Arrow-for-arrow isomorphism of triangulation quivers: a bijection of
 * vertices and arrows preserving sources, targets and f. */
inline bool tq_isomorphic(const TriangulationQuiver& A, const TriangulationQuiver& B) {
    size_t na = A.q.n_arrows(), nv = A.q.n_vertices();
    if (na != B.q.n_arrows() || nv != B.q.n_vertices()) return false;
    std::vector<int> amap(na, -1), vmap(nv, -1);
    std::vector<char> aused(na, 0), vused(nv, 0);

    auto bind_vertex = [&](int va, int vb, std::vector<std::pair<int, int>>& undo) {
        if (vmap[size_t(va)] == vb) return true;
        if (vmap[size_t(va)] != -1 || vused[size_t(vb)]) return false;
        vmap[size_t(va)] = vb;
        vused[size_t(vb)] = 1;
        undo.emplace_back(va, vb);
        return true;
    };

    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
        if (k == na) return true;
        int a = int(k);
        for (size_t b = 0; b < na; ++b) {
            if (aused[b]) continue;
            std::vector<std::pair<int, int>> undo;
            bool ok = bind_vertex(A.q.src(a), B.q.src(int(b)), undo) &&
                      bind_vertex(A.q.tgt(a), B.q.tgt(int(b)), undo);
            if (ok) {
                int fa = A.f(a);
                if (amap[size_t(fa)] != -1 && amap[size_t(fa)] != B.f(int(b))) ok = false;
                if (ok)
                    for (size_t x = 0; x < na && ok; ++x)
                        if (amap[x] != -1 && A.f(int(x)) == a && B.f(amap[x]) != int(b)) ok = false;
            }
            if (ok) {
                amap[size_t(a)] = int(b);
                aused[b] = 1;
                if (rec(k + 1)) return true;
                amap[size_t(a)] = -1;
                aused[b] = 0;
            }
            for (auto [va, vb] : undo) {
                vmap[size_t(va)] = -1;
                vused[size_t(vb)] = 0;
            }
        }
        return false;
    };
    return rec(0);
}

/* Same triangulation quiver under renamed, reordered labels. */
inline TriangulationQuiver relabeled(const TriangulationQuiver& tq, unsigned seed) {
    std::mt19937_64 rng(seed);
    const Quiver& q = tq.q;
    std::vector<int> vperm(q.n_vertices()), aperm(q.n_arrows());
    for (size_t i = 0; i < vperm.size(); ++i) vperm[i] = int(i);
    for (size_t i = 0; i < aperm.size(); ++i) aperm[i] = int(i);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::shuffle(aperm.begin(), aperm.end(), rng);

    Quiver out;
    std::vector<std::string> vname(q.n_vertices()), aname(q.n_arrows());
    for (size_t i = 0; i < q.n_vertices(); ++i) vname[size_t(vperm[i])] = "w" + std::to_string(i);
    for (size_t i = 0; i < q.n_arrows(); ++i) aname[size_t(aperm[i])] = "z" + std::to_string(i);
    std::vector<int> vpos(q.n_vertices());
    for (size_t i = 0; i < q.n_vertices(); ++i) {
        out.vertices.push_back(vname[size_t(vperm[i])]);
        vpos[size_t(i)] = int(i); // position of original vertex i in `out`
    }
    // new arrow order: by aperm rank
    std::vector<int> order(q.n_arrows());
    for (size_t i = 0; i < q.n_arrows(); ++i) order[size_t(aperm[i])] = int(i);
    std::vector<int> arrow_pos(q.n_arrows(), -1);
    for (size_t slot = 0; slot < q.n_arrows(); ++slot) {
        int orig = order[slot];
        arrow_pos[size_t(orig)] = int(out.arrows.size());
        out.arrows.push_back(Arrow{aname[size_t(aperm[size_t(orig)])], vpos[size_t(q.src(orig))],
                                   vpos[size_t(q.tgt(orig))]});
    }
    out.finalize();
    std::vector<std::vector<int>> f_cycles;
    for (const auto& cyc : tq.f.cycles()) {
        std::vector<int> c;
        for (int a : cyc) c.push_back(arrow_pos[size_t(a)]);
        f_cycles.push_back(std::move(c));
    }
    return validate_triangulation(out, f_cycles);
}

/* Random directed triangulated surface: a few ordinary and self-folded
 * triangles with slots paired at random, leftovers becoming boundary.
 * Returns an empty optional when the gluing is not a valid connected
 * surface (caller retries with the next seed). */
inline std::optional<Surface> random_surface(unsigned seed) {
    std::mt19937_64 rng(seed);
    int n_ord = 1 + int(rng() % 5);
    int n_sf = int(rng() % 2);
    Surface s;
    struct Slot {
        int tri;
        int side;
    };
    std::vector<Slot> pool;
    int edge_id = 0;
    auto fresh = [&]() { return "e" + std::to_string(edge_id++); };
    for (int t = 0; t < n_ord; ++t) {
        s.triangles.push_back(Triangle{false, {"", "", ""}});
        for (int k = 0; k < 3; ++k) pool.push_back(Slot{t, k});
    }
    for (int t = 0; t < n_sf; ++t) {
        std::string folded = fresh();
        s.edges.push_back(folded);
        s.triangles.push_back(Triangle{true, {folded, folded, ""}});
        pool.push_back(Slot{n_ord + t, 2});
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t max_pairs = pool.size() / 2;
    size_t pairs = max_pairs == 0 ? 0 : rng() % (max_pairs + 1);
    size_t used = 0;
    for (size_t p = 0; p < pairs; ++p) {
        Slot a = pool[used], b = pool[used + 1];
        if (a.tri == b.tri) return std::nullopt; // avoid ad-hoc doubled sides
        std::string e = fresh();
        s.edges.push_back(e);
        s.triangles[size_t(a.tri)].edges[size_t(a.side)] = e;
        s.triangles[size_t(b.tri)].edges[size_t(b.side)] = e;
        used += 2;
    }
    for (size_t k = used; k < pool.size(); ++k) {
        std::string e = fresh();
        s.edges.push_back(e);
        s.triangles[size_t(pool[k].tri)].edges[size_t(pool[k].side)] = e;
        s.boundary.push_back(e);
    }
    std::sort(s.edges.begin(), s.edges.end());
    if (s.edges.size() < 3) return std::nullopt;
    if (!validate_surface(s).ok) return std::nullopt;
    try {
        quiver_of_surface(s);
    } catch (const ValidationError&) {
        return std::nullopt; // e.g. disconnected gluing
    }
    return s;
}

} // namespace qgt::testutil
