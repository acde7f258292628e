#include "qgt/algebra.hpp"

#include "qgt/errors.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <random>
#include <sstream>

namespace qgt {

namespace {

struct RelTerm {
    std::vector<int> arrows;
    Scalar coeff;
};

struct Rel {
    int src = -1, tgt = -1, minlen = 0;
    std::vector<RelTerm> terms;
};

// (rank, coeff) pairs sorted by rank; the front entry is the lead.
using Row = std::vector<std::pair<int, Scalar>>;

/* All paths out of one vertex, of length <= L, as a trie; nodes are created
 * parents-first with children in arrow-id-lex order, so node index order is
 * (length, lex) order.  After elimination the fiber holds the local normal
 * forms of e_iA. */
struct Fiber {
    int source = -1;
    int bound = 0;
    std::vector<int> parent, via, len, tgt;
    std::vector<std::vector<int>> kids; // by lex slot at tgt; -1 when cut off at L
    std::vector<char> isg;              // path follows g at every step

    std::vector<int> node_of_rank, rank_of;

    std::vector<char> is_pivot;
    std::vector<int> basis_pos; // node -> local basis index, -1 for pivots
    std::vector<int> basis_nodes;
    // For pivot nodes: expansion over local basis indices; empty for basis
    // nodes (a basis node is its own normal form).
    std::vector<std::vector<std::pair<int, Scalar>>> nf;
    std::vector<int> dims_by_len;
};

struct Budget {
    long long max_nodes;
    std::atomic<long long>* rows_left;
};

Fiber build_fiber(const Quiver& q, const std::vector<std::vector<int>>& out_lex,
                  const std::vector<int>& slot_of_arrow, const std::vector<int>* gmap,
                  const std::vector<Rel>& rels, const Field& F, int source, int L,
                  const Budget& budget) {
    Fiber fb;
    fb.source = source;
    fb.bound = L;

    auto add_node = [&](int par, int arrow) {
        if ((long long)fb.parent.size() >= budget.max_nodes)
            throw CapError("path trie exceeded the node budget (" + std::to_string(budget.max_nodes) +
                           ") at truncation length " + std::to_string(L) +
                           "; the quotient may be infinite-dimensional");
        int id = int(fb.parent.size());
        fb.parent.push_back(par);
        fb.via.push_back(arrow);
        fb.len.push_back(par < 0 ? 0 : fb.len[size_t(par)] + 1);
        fb.tgt.push_back(par < 0 ? source : q.tgt(arrow));
        bool g_ok = par < 0 || fb.len[size_t(par)] == 0 ||
                    (gmap && fb.isg[size_t(par)] && (*gmap)[size_t(fb.via[size_t(par)])] == arrow);
        fb.isg.push_back(char(g_ok));
        fb.kids.emplace_back();
        return id;
    };

    add_node(-1, -1);
    for (size_t n = 0; n < fb.parent.size(); ++n) {
        const auto& outs = out_lex[size_t(fb.tgt[n])];
        fb.kids[n].assign(outs.size(), -1);
        if (fb.len[n] == L) continue;
        for (size_t s = 0; s < outs.size(); ++s) {
            int id = add_node(int(n), outs[s]); // may reallocate kids
            fb.kids[n][s] = id;
        }
    }

    int n_nodes = int(fb.parent.size());
    fb.node_of_rank.resize(size_t(n_nodes));
    for (int n = 0; n < n_nodes; ++n) fb.node_of_rank[size_t(n)] = n;
    std::sort(fb.node_of_rank.begin(), fb.node_of_rank.end(), [&](int a, int b) {
        if (fb.len[size_t(a)] != fb.len[size_t(b)]) return fb.len[size_t(a)] < fb.len[size_t(b)];
        if (fb.isg[size_t(a)] != fb.isg[size_t(b)]) return fb.isg[size_t(a)] < fb.isg[size_t(b)];
        return a < b;
    });
    fb.rank_of.resize(size_t(n_nodes));
    for (int r = 0; r < n_nodes; ++r) fb.rank_of[size_t(fb.node_of_rank[size_t(r)])] = r;

    // Streaming Gaussian elimination: every two-sided multiple of a relation
    // (truncated at length L) is reduced against the pivots found so far and
    // installed as a new pivot if anything is left.
    std::vector<int> pivot_at(size_t(n_nodes), -1); // by rank
    std::vector<Row> pivot_rows;

    auto axpy = [&](Row& row, const Row& piv, const Scalar& factor) {
        // row -= factor * piv; piv is monic and its lead equals row's lead.
        Row out;
        out.reserve(row.size() + piv.size());
        size_t a = 1, b = 1; // both leads cancel by construction
        while (a < row.size() || b < piv.size()) {
            if (b >= piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
                out.push_back(row[a++]);
            } else if (a >= row.size() || piv[b].first < row[a].first) {
                out.emplace_back(piv[b].first, F.neg(F.mul(factor, piv[b].second)));
                ++b;
            } else {
                Scalar cc = F.sub(row[a].second, F.mul(factor, piv[b].second));
                if (!cc.is_zero()) out.emplace_back(row[a].first, cc);
                ++a, ++b;
            }
        }
        row = std::move(out);
    };

    auto install = [&](Row row) {
        while (!row.empty()) {
            int lead = row.front().first;
            int p = pivot_at[size_t(lead)];
            if (p < 0) {
                Scalar inv = F.inv(row.front().second);
                for (auto& t : row) t.second = F.mul(t.second, inv);
                pivot_at[size_t(lead)] = int(pivot_rows.size());
                pivot_rows.push_back(std::move(row));
                return;
            }
            axpy(row, pivot_rows[size_t(p)], row.front().second);
        }
    };

    auto walk = [&](int node, const std::vector<int>& arrows) {
        int cur = node;
        for (int a : arrows) {
            cur = fb.kids[size_t(cur)][size_t(slot_of_arrow[size_t(a)])];
            if (cur < 0) return -1;
        }
        return cur;
    };

    std::vector<int> heads;
    std::vector<std::vector<int>> stack_heads;
    for (const auto& rel : rels) {
        for (int u = 0; u < n_nodes; ++u) {
            if (fb.tgt[size_t(u)] != rel.src) continue;
            if (fb.len[size_t(u)] + rel.minlen > L) continue;
            heads.clear();
            bool any = false;
            for (const auto& t : rel.terms) {
                int h = walk(u, t.arrows);
                heads.push_back(h);
                any = any || h >= 0;
            }
            if (!any) continue;

            // Depth-first over all suffixes; one row per (prefix, suffix).
            stack_heads.clear();
            stack_heads.push_back(heads);
            std::vector<int> slot_stack{-1}; // next slot to try at each level
            std::vector<int> at_vertex{rel.tgt};
            while (!stack_heads.empty()) {
                auto& cur = stack_heads.back();
                int& slot = slot_stack.back();
                if (slot < 0) {
                    slot = 0;
                    Row row;
                    for (size_t t = 0; t < cur.size(); ++t)
                        if (cur[t] >= 0)
                            row.emplace_back(fb.rank_of[size_t(cur[t])], rel.terms[t].coeff);
                    std::sort(row.begin(), row.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    if (!row.empty()) {
                        if (budget.rows_left->fetch_sub(1) <= 0)
                            throw CapError("ideal-closure row budget exceeded at truncation length " +
                                           std::to_string(L));
                        install(std::move(row));
                    }
                }
                const auto& outs = out_lex[size_t(at_vertex.back())];
                if (size_t(slot) >= outs.size()) {
                    stack_heads.pop_back();
                    slot_stack.pop_back();
                    at_vertex.pop_back();
                    continue;
                }
                int s = slot++;
                std::vector<int> next(cur.size(), -1);
                bool alive = false;
                for (size_t t = 0; t < cur.size(); ++t) {
                    if (cur[t] < 0) continue;
                    int k = fb.kids[size_t(cur[t])][size_t(s)];
                    next[t] = k;
                    alive = alive || k >= 0;
                }
                if (!alive) continue;
                int nv = q.tgt(outs[size_t(s)]);
                stack_heads.push_back(std::move(next));
                slot_stack.push_back(-1);
                at_vertex.push_back(nv);
            }
        }
    }

    // Full back-substitution, processing leads from the deep end so each
    // substituted pivot is already fully reduced.
    for (int r = n_nodes - 1; r >= 0; --r) {
        int p = pivot_at[size_t(r)];
        if (p < 0) continue;
        Row& row = pivot_rows[size_t(p)];
        std::map<int, Scalar> acc;
        for (size_t t = 1; t < row.size(); ++t) acc[row[t].first] = row[t].second;
        Row out;
        out.push_back(row.front());
        while (!acc.empty()) {
            auto [rk, cc] = *acc.begin();
            acc.erase(acc.begin());
            if (cc.is_zero()) continue;
            int pv = pivot_at[size_t(rk)];
            if (pv < 0) {
                out.emplace_back(rk, cc);
                continue;
            }
            const Row& sub = pivot_rows[size_t(pv)];
            for (size_t t = 1; t < sub.size(); ++t) {
                auto it = acc.find(sub[t].first);
                Scalar add = F.neg(F.mul(cc, sub[t].second));
                if (it == acc.end())
                    acc.emplace(sub[t].first, add);
                else
                    it->second = F.add(it->second, add);
            }
        }
        row = std::move(out);
    }

    fb.is_pivot.assign(size_t(n_nodes), 0);
    for (int r = 0; r < n_nodes; ++r)
        if (pivot_at[size_t(r)] >= 0) fb.is_pivot[size_t(fb.node_of_rank[size_t(r)])] = 1;

    fb.basis_pos.assign(size_t(n_nodes), -1);
    for (int n = 0; n < n_nodes; ++n) {
        if (fb.is_pivot[size_t(n)]) continue;
        fb.basis_pos[size_t(n)] = int(fb.basis_nodes.size());
        fb.basis_nodes.push_back(n);
    }

    fb.nf.assign(size_t(n_nodes), {});
    for (int r = 0; r < n_nodes; ++r) {
        int p = pivot_at[size_t(r)];
        if (p < 0) continue;
        int node = fb.node_of_rank[size_t(r)];
        const Row& row = pivot_rows[size_t(p)];
        auto& out = fb.nf[size_t(node)];
        for (size_t t = 1; t < row.size(); ++t) {
            int tn = fb.node_of_rank[size_t(row[t].first)];
            int bp = fb.basis_pos[size_t(tn)];
            if (bp < 0)
                throw CapError("internal: back-substitution left a reducible term");
            out.emplace_back(bp, F.neg(row[t].second));
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }

    fb.dims_by_len.assign(size_t(L) + 1, 0);
    for (int n : fb.basis_nodes) fb.dims_by_len[size_t(fb.len[size_t(n)])]++;
    return fb;
}

std::vector<int> node_arrows(const Fiber& fb, int node) {
    std::vector<int> out;
    for (int n = node; fb.parent[size_t(n)] >= 0; n = fb.parent[size_t(n)])
        out.push_back(fb.via[size_t(n)]);
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

struct AlgebraImpl {
    Presentation pres;
    Field F;
    std::optional<TriangulationQuiver> tq;
    BuildCertificate cert;

    std::vector<std::vector<int>> out_lex;
    std::vector<int> slot_of_arrow;

    std::vector<Fiber> fibers;
    std::vector<BasisWord> basis;
    std::vector<int> offsets;     // per vertex
    std::vector<int> word_target; // per global index
    std::vector<int> idem;        // per vertex -> global index
    std::vector<std::vector<Mat>> act;                                   // [v][arrow]
    std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> table; // sparse products

    AlgebraImpl(Presentation p, Field f) : pres(std::move(p)), F(std::move(f)) {}

    int dim() const { return int(basis.size()); }
    int nv() const { return int(pres.quiver.n_vertices()); }
    int vdim(int v) const { return int(fibers[size_t(v)].basis_nodes.size()); }

    Vec nf_local(int v, int node) const {
        const Fiber& fb = fibers[size_t(v)];
        Vec out(size_t(vdim(v)), F.zero());
        int bp = fb.basis_pos[size_t(node)];
        if (bp >= 0) {
            out[size_t(bp)] = F.one();
        } else {
            for (const auto& [idx, c] : fb.nf[size_t(node)]) out[size_t(idx)] = c;
        }
        return out;
    }
};

namespace {

std::vector<Rel> digest_relations(const Presentation& p) {
    std::vector<Rel> rels;
    for (const auto& expr : p.relations) {
        Rel r;
        r.src = expr.terms.front().first.source;
        r.tgt = expr.terms.front().first.target(p.quiver);
        r.minlen = expr.terms.front().first.length();
        for (const auto& [path, coeff] : expr.terms) {
            r.minlen = std::min(r.minlen, path.length());
            r.terms.push_back(RelTerm{path.arrows, coeff});
        }
        rels.push_back(std::move(r));
    }
    return rels;
}

} // namespace

FiniteDimAlgebra FiniteDimAlgebra::build(const Presentation& p, const AlgebraOptions& opt) {
    validate_presentation(p);
    Field F(p.field);
    auto impl = std::make_shared<AlgebraImpl>(p, F);
    const Quiver& q = impl->pres.quiver;

    if (p.f_cycles) impl->tq = validate_triangulation(q, *p.f_cycles);
    const std::vector<int>* gmap = impl->tq ? &impl->tq->g.map : nullptr;

    impl->out_lex.resize(q.n_vertices());
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        impl->out_lex[v] = q.out_arrows[v];
        std::sort(impl->out_lex[v].begin(), impl->out_lex[v].end(),
                  [&](int a, int b) { return q.arrow_lex_rank[size_t(a)] < q.arrow_lex_rank[size_t(b)]; });
    }
    impl->slot_of_arrow.assign(q.n_arrows(), -1);
    for (size_t v = 0; v < q.n_vertices(); ++v)
        for (size_t s = 0; s < impl->out_lex[v].size(); ++s)
            impl->slot_of_arrow[size_t(impl->out_lex[v][s])] = int(s);

    std::vector<Rel> rels = digest_relations(p);

    int max_term_len = 2;
    for (const auto& r : rels)
        for (const auto& t : r.terms) max_term_len = std::max(max_term_len, int(t.arrows.size()));

    int L = opt.bound > 0 ? opt.bound : std::max(8, max_term_len + 3);
    if (L < 4) L = 4;
    if (L > opt.max_bound) L = opt.max_bound;

    auto build_all = [&](int bound) {
        std::atomic<long long> rows_left{opt.max_rows};
        Budget budget{opt.max_nodes, &rows_left};
        std::vector<Fiber> out(q.n_vertices());
        if (opt.jobs > 1 && q.n_vertices() > 1) {
            std::vector<std::future<Fiber>> futs;
            for (size_t v = 0; v < q.n_vertices(); ++v)
                futs.push_back(std::async(std::launch::async, [&, v] {
                    return build_fiber(q, impl->out_lex, impl->slot_of_arrow, gmap, rels, F,
                                       int(v), bound, budget);
                }));
            for (size_t v = 0; v < q.n_vertices(); ++v) out[v] = futs[v].get();
        } else {
            for (size_t v = 0; v < q.n_vertices(); ++v)
                out[v] = build_fiber(q, impl->out_lex, impl->slot_of_arrow, gmap, rels, F, int(v),
                                     bound, budget);
        }
        return out;
    };

    for (;;) {
        std::vector<Fiber> at = build_all(L);
        std::vector<Fiber> above = build_all(L + 1);

        int maxlen = 0;
        for (const auto& fb : at)
            for (int n : fb.basis_nodes) maxlen = std::max(maxlen, fb.len[size_t(n)]);

        bool headroom = maxlen <= L - 2;
        bool deep_zero = true;
        for (const auto& fb : at)
            for (size_t n = 0; n < fb.parent.size(); ++n)
                if (fb.len[n] > maxlen && (!fb.is_pivot[n] || !fb.nf[n].empty())) deep_zero = false;
        bool stable = true;
        for (size_t v = 0; v < q.n_vertices(); ++v) {
            const auto &da = at[v].dims_by_len, &db = above[v].dims_by_len;
            for (size_t l = 0; l < db.size(); ++l) {
                int x = l < da.size() ? da[l] : 0;
                if (x != db[l]) stable = false;
            }
        }

        if (headroom && deep_zero && stable) {
            impl->fibers = std::move(at);
            impl->cert.bound = L;
            impl->cert.rebuild_bound = L + 1;
            impl->cert.max_word_length = maxlen;
            impl->cert.nilpotency = maxlen + 1;
            impl->cert.length_headroom = headroom;
            impl->cert.deep_paths_vanish = deep_zero;
            impl->cert.stable_dims = stable;
            break;
        }
        if (L >= opt.max_bound)
            throw CapError("basis did not stabilize by the truncation cap " +
                           std::to_string(opt.max_bound) +
                           "; the ideal may fail to be admissible or the quotient may be "
                           "infinite-dimensional");
        L = std::min(L * 2, opt.max_bound);
    }

    // Global basis, grouped by source vertex, each block in (length, lex) order.
    impl->offsets.assign(q.n_vertices() + 1, 0);
    impl->idem.assign(q.n_vertices(), -1);
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        impl->offsets[v] = int(impl->basis.size());
        const Fiber& fb = impl->fibers[v];
        for (int n : fb.basis_nodes) {
            if (fb.len[size_t(n)] == 0) impl->idem[v] = int(impl->basis.size());
            impl->word_target.push_back(fb.tgt[size_t(n)]);
            impl->basis.push_back(BasisWord{int(v), node_arrows(fb, n)});
        }
    }
    impl->offsets[q.n_vertices()] = int(impl->basis.size());

    // Right action of every arrow on every e_vA.
    impl->act.resize(q.n_vertices());
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        const Fiber& fb = impl->fibers[v];
        int d = impl->vdim(int(v));
        impl->act[v].resize(q.n_arrows());
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            Mat m(size_t(d), Vec(size_t(d), F.zero()));
            for (int w = 0; w < d; ++w) {
                int node = fb.basis_nodes[size_t(w)];
                if (fb.tgt[size_t(node)] != q.src(int(a))) continue;
                int child = fb.kids[size_t(node)][size_t(impl->slot_of_arrow[a])];
                if (child < 0)
                    throw CapError("internal: basis word lacks headroom for arrow action");
                Vec nfv = impl->nf_local(int(v), child);
                for (int k = 0; k < d; ++k) m[size_t(w)][size_t(k)] = nfv[size_t(k)];
            }
            impl->act[v][a] = std::move(m);
        }
    }

    // Sparse structure table: product of basis words p*q in global coordinates.
    int D = impl->dim();
    impl->table.assign(size_t(D), {});
    for (int pidx = 0; pidx < D; ++pidx) {
        impl->table[size_t(pidx)].assign(size_t(D), {});
        int pv = impl->basis[size_t(pidx)].vertex;
        int ptgt = impl->word_target[size_t(pidx)];
        int d = impl->vdim(pv);
        for (int qidx = 0; qidx < D; ++qidx) {
            const BasisWord& wq = impl->basis[size_t(qidx)];
            if (wq.vertex != ptgt) continue;
            Vec cur(size_t(d), F.zero());
            cur[size_t(pidx - impl->offsets[size_t(pv)])] = F.one();
            for (int a : wq.arrows) {
                const Mat& m = impl->act[size_t(pv)][size_t(a)];
                Vec nxt(size_t(d), F.zero());
                for (int r = 0; r < d; ++r) {
                    if (cur[size_t(r)].is_zero()) continue;
                    for (int c = 0; c < d; ++c) {
                        if (m[size_t(r)][size_t(c)].is_zero()) continue;
                        nxt[size_t(c)] = F.add(nxt[size_t(c)], F.mul(cur[size_t(r)], m[size_t(r)][size_t(c)]));
                    }
                }
                cur = std::move(nxt);
            }
            auto& entry = impl->table[size_t(pidx)][size_t(qidx)];
            for (int k = 0; k < d; ++k)
                if (!cur[size_t(k)].is_zero()) entry.emplace_back(impl->offsets[size_t(pv)] + k, cur[size_t(k)]);
        }
    }

    // Relations act as zero in the right regular representation.
    bool ann = true;
    for (size_t v = 0; v < q.n_vertices() && ann; ++v) {
        int d = impl->vdim(int(v));
        if (d == 0) continue;
        for (const auto& rel : rels) {
            Mat sum(size_t(d), Vec(size_t(d), F.zero()));
            for (const auto& t : rel.terms) {
                Mat m(size_t(d), Vec(size_t(d), F.zero()));
                for (int i = 0; i < d; ++i) m[size_t(i)][size_t(i)] = F.one();
                for (int a : t.arrows) {
                    const Mat& ma = impl->act[v][size_t(a)];
                    Mat nxt(size_t(d), Vec(size_t(d), F.zero()));
                    for (int r = 0; r < d; ++r)
                        for (int kk = 0; kk < d; ++kk) {
                            if (m[size_t(r)][size_t(kk)].is_zero()) continue;
                            for (int c = 0; c < d; ++c) {
                                if (ma[size_t(kk)][size_t(c)].is_zero()) continue;
                                nxt[size_t(r)][size_t(c)] = F.add(
                                    nxt[size_t(r)][size_t(c)],
                                    F.mul(m[size_t(r)][size_t(kk)], ma[size_t(kk)][size_t(c)]));
                            }
                        }
                    m = std::move(nxt);
                }
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        sum[size_t(r)][size_t(c)] =
                            F.add(sum[size_t(r)][size_t(c)], F.mul(t.coeff, m[size_t(r)][size_t(c)]));
            }
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    if (!sum[size_t(r)][size_t(c)].is_zero()) ann = false;
        }
    }
    impl->cert.relations_annihilate = ann;
    if (!ann) throw CapError("internal: relations do not annihilate the computed basis");

    FiniteDimAlgebra A(impl);

    // Associativity spot checks on pseudo-random basis triples.
    bool assoc = true;
    if (D > 0) {
        std::mt19937_64 rng(0x5851f42d4c957f2dULL);
        std::uniform_int_distribution<int> pick(0, D - 1);
        for (int t = 0; t < 200 && assoc; ++t) {
            Vec x(size_t(D), F.zero()), y(size_t(D), F.zero()), z(size_t(D), F.zero());
            x[size_t(pick(rng))] = F.one();
            y[size_t(pick(rng))] = F.one();
            z[size_t(pick(rng))] = F.one();
            Vec left = A.multiply(A.multiply(x, y), z);
            Vec right = A.multiply(x, A.multiply(y, z));
            if (left != right) assoc = false;
        }
    }
    impl->cert.associativity_spot_check = assoc;
    if (!assoc) throw CapError("internal: associativity spot check failed");

    return A;
}

const Presentation& FiniteDimAlgebra::presentation() const { return impl_->pres; }
const Quiver& FiniteDimAlgebra::quiver() const { return impl_->pres.quiver; }
const Field& FiniteDimAlgebra::field() const { return impl_->F; }
bool FiniteDimAlgebra::has_triangulation() const { return impl_->tq.has_value(); }

const TriangulationQuiver& FiniteDimAlgebra::triangulation() const {
    if (!impl_->tq) throw ValidationError("algebra carries no triangulation structure");
    return *impl_->tq;
}

int FiniteDimAlgebra::dimension() const { return impl_->dim(); }
int FiniteDimAlgebra::n_vertices() const { return impl_->nv(); }
int FiniteDimAlgebra::vertex_dim(int v) const { return impl_->vdim(v); }
int FiniteDimAlgebra::vertex_offset(int v) const { return impl_->offsets[size_t(v)]; }
const std::vector<BasisWord>& FiniteDimAlgebra::basis() const { return impl_->basis; }

std::string FiniteDimAlgebra::basis_word_string(int g) const {
    const BasisWord& w = impl_->basis[size_t(g)];
    return path_to_string(impl_->pres.quiver, Path{w.vertex, w.arrows});
}

int FiniteDimAlgebra::idempotent_index(int v) const { return impl_->idem[size_t(v)]; }

Vec FiniteDimAlgebra::nf_path(const Path& p) const {
    if (!p.composable(impl_->pres.quiver)) throw ValidationError("non-composable path");
    const Fiber& fb = impl_->fibers[size_t(p.source)];
    int node = 0;
    for (int a : p.arrows) {
        node = fb.kids[size_t(node)][size_t(impl_->slot_of_arrow[size_t(a)])];
        if (node < 0) return Vec(size_t(impl_->vdim(p.source)), impl_->F.zero());
    }
    return impl_->nf_local(p.source, node);
}

Vec FiniteDimAlgebra::nf_path_global(const Path& p) const {
    Vec local = nf_path(p);
    Vec out(size_t(impl_->dim()), impl_->F.zero());
    int off = impl_->offsets[size_t(p.source)];
    for (size_t k = 0; k < local.size(); ++k) out[size_t(off) + k] = local[k];
    return out;
}

const Mat& FiniteDimAlgebra::action(int v, int arrow) const {
    return impl_->act[size_t(v)][size_t(arrow)];
}

Vec FiniteDimAlgebra::multiply(const Vec& x, const Vec& y) const {
    const Field& F = impl_->F;
    int D = impl_->dim();
    if (int(x.size()) != D || int(y.size()) != D)
        throw ValidationError("element has wrong dimension");
    Vec out(size_t(D), F.zero());
    for (int p = 0; p < D; ++p) {
        if (x[size_t(p)].is_zero()) continue;
        for (int q = 0; q < D; ++q) {
            if (y[size_t(q)].is_zero()) continue;
            for (const auto& [k, c] : impl_->table[size_t(p)][size_t(q)])
                out[size_t(k)] = F.add(out[size_t(k)], F.mul(F.mul(x[size_t(p)], y[size_t(q)]), c));
        }
    }
    return out;
}

int FiniteDimAlgebra::max_word_length() const { return impl_->cert.max_word_length; }
int FiniteDimAlgebra::nilpotency_index() const { return impl_->cert.nilpotency; }

std::vector<std::vector<int>> FiniteDimAlgebra::radical_layer_dims() const {
    std::vector<std::vector<int>> out(size_t(impl_->nv()),
                                      std::vector<int>(size_t(impl_->cert.max_word_length) + 1, 0));
    for (const auto& w : impl_->basis) out[size_t(w.vertex)][size_t(w.length())]++;
    return out;
}

std::vector<int> FiniteDimAlgebra::radical_series() const {
    std::vector<int> out(size_t(impl_->cert.max_word_length) + 1, 0);
    for (const auto& w : impl_->basis) out[size_t(w.length())]++;
    return out;
}

std::vector<int> FiniteDimAlgebra::socle_dims() const {
    std::vector<int> out;
    for (int v = 0; v < impl_->nv(); ++v) out.push_back(int(socle_basis(v).size()));
    return out;
}

Mat FiniteDimAlgebra::socle_basis(int v) const {
    const Field& F = impl_->F;
    const Quiver& q = impl_->pres.quiver;
    int d = impl_->vdim(v);
    if (d == 0) return {};
    // x in soc(e_vA) iff x * a = 0 for every arrow a: left kernel of the
    // horizontally stacked action matrices.
    Mat stacked(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r)
        for (size_t a = 0; a < q.n_arrows(); ++a)
            for (int c = 0; c < d; ++c)
                stacked[size_t(r)].push_back(impl_->act[size_t(v)][a][size_t(r)][size_t(c)]);
    if (stacked.front().empty()) {
        Mat id(size_t(d), Vec(size_t(d), F.zero()));
        for (int r = 0; r < d; ++r) id[size_t(r)][size_t(r)] = F.one();
        return id;
    }
    return left_kernel(stacked, F);
}

std::vector<int> FiniteDimAlgebra::socle2_dims() const {
    const Field& F = impl_->F;
    const Quiver& q = impl_->pres.quiver;
    std::vector<int> out;
    for (int v = 0; v < impl_->nv(); ++v) {
        int d = impl_->vdim(v);
        if (d == 0) {
            out.push_back(0);
            continue;
        }
        Mat stacked(static_cast<size_t>(d));
        for (size_t a = 0; a < q.n_arrows(); ++a)
            for (size_t b = 0; b < q.n_arrows(); ++b) {
                if (q.tgt(int(a)) != q.src(int(b))) continue;
                const Mat &ma = impl_->act[size_t(v)][a], &mb = impl_->act[size_t(v)][b];
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) {
                        Scalar s = F.zero();
                        for (int k = 0; k < d; ++k)
                            s = F.add(s, F.mul(ma[size_t(r)][size_t(k)], mb[size_t(k)][size_t(c)]));
                        stacked[size_t(r)].push_back(s);
                    }
            }
        if (stacked.front().empty()) {
            out.push_back(d);
            continue;
        }
        out.push_back(int(left_kernel(stacked, F).size()));
    }
    return out;
}

std::vector<std::vector<long long>> FiniteDimAlgebra::cartan_matrix() const {
    std::vector<std::vector<long long>> c(size_t(impl_->nv()),
                                          std::vector<long long>(size_t(impl_->nv()), 0));
    for (size_t g = 0; g < impl_->basis.size(); ++g)
        c[size_t(impl_->basis[g].vertex)][size_t(impl_->word_target[g])]++;
    return c;
}

i128 FiniteDimAlgebra::cartan_determinant() const {
    auto c = cartan_matrix();
    size_t n = c.size();
    std::vector<std::vector<i128>> m(n, std::vector<i128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = c[i][j];
    // Fraction-free (Bareiss) elimination.
    i128 prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k;
            for (size_t r = k + 1; r < n; ++r)
                if (m[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (m[piv][k] == 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (checked_mul(m[i][j], m[k][k]) - checked_mul(m[i][k], m[k][j])) / prev;
        prev = m[k][k];
    }
    return n == 0 ? i128(1) : sign * m[n - 1][n - 1];
}

const BuildCertificate& FiniteDimAlgebra::certificate() const { return impl_->cert; }

SymmetricFormReport symmetric_form(const FiniteDimAlgebra& A, int trials, unsigned long long seed) {
    const Field& F = A.field();
    int D = A.dimension();
    SymmetricFormReport rep;
    if (D == 0) {
        rep.witness_found = false;
        rep.detail = "zero algebra";
        return rep;
    }

    auto product = [&](int p, int q) {
        Vec x(size_t(D), F.zero()), y(size_t(D), F.zero());
        x[size_t(p)] = F.one();
        y[size_t(q)] = F.one();
        return A.multiply(x, y);
    };

    // Space of linear forms vanishing on all commutators xy - yx.
    Mat constraints;
    for (int p = 0; p < D; ++p)
        for (int q = p + 1; q < D; ++q) {
            Vec pq = product(p, q), qp = product(q, p);
            Vec row(size_t(D), F.zero());
            bool nz = false;
            for (int k = 0; k < D; ++k) {
                row[size_t(k)] = F.sub(pq[size_t(k)], qp[size_t(k)]);
                nz = nz || !row[size_t(k)].is_zero();
            }
            if (nz) constraints.push_back(std::move(row));
        }

    Mat ann;
    if (constraints.empty()) {
        ann.assign(size_t(D), Vec(size_t(D), F.zero()));
        for (int k = 0; k < D; ++k) ann[size_t(k)][size_t(k)] = F.one();
    } else {
        Mat tr(size_t(D), Vec(constraints.size(), F.zero()));
        for (size_t r = 0; r < constraints.size(); ++r)
            for (int k = 0; k < D; ++k) tr[size_t(k)][r] = constraints[r][size_t(k)];
        ann = left_kernel(tr, F);
    }
    rep.commutator_codimension = int(ann.size());
    if (ann.empty()) {
        rep.refuted = true;
        rep.detail = "no nonzero linear form vanishes on the commutator subspace";
        return rep;
    }

    // Deterministic refutation: a nonzero socle vector on which every
    // candidate form vanishes spans a one-sided ideal inside the kernel.
    for (int v = 0; v < A.n_vertices(); ++v) {
        Mat soc = A.socle_basis(v);
        if (soc.empty()) continue;
        Mat pairing(soc.size(), Vec(ann.size(), F.zero()));
        for (size_t s = 0; s < soc.size(); ++s)
            for (size_t a = 0; a < ann.size(); ++a) {
                Scalar val = F.zero();
                for (size_t k = 0; k < soc[s].size(); ++k)
                    val = F.add(val, F.mul(soc[s][k], ann[a][size_t(A.vertex_offset(v)) + k]));
                pairing[s][a] = val;
            }
        if (!left_kernel(pairing, F).empty()) {
            rep.refuted = true;
            rep.detail = "socle of the projective at vertex " + A.quiver().vname(v) +
                         " pairs to zero with every commutator-annihilating form";
            return rep;
        }
    }

    // Gram matrix rank test for a candidate form.
    auto nondegenerate = [&](const Vec& phi) {
        Mat gram(size_t(D), Vec(size_t(D), F.zero()));
        for (int p = 0; p < D; ++p)
            for (int q = 0; q < D; ++q) {
                Vec pq = product(p, q);
                Scalar s = F.zero();
                for (int k = 0; k < D; ++k) s = F.add(s, F.mul(pq[size_t(k)], phi[size_t(k)]));
                gram[size_t(p)][size_t(q)] = s;
            }
        return rank(gram, F) == D;
    };

    std::vector<Vec> candidates;
    for (const auto& a : ann) candidates.push_back(a);
    {
        Vec sum(size_t(D), F.zero());
        for (const auto& a : ann)
            for (int k = 0; k < D; ++k) sum[size_t(k)] = F.add(sum[size_t(k)], a[size_t(k)]);
        candidates.push_back(std::move(sum));
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vec phi(size_t(D), F.zero());
        for (const auto& a : ann) {
            Scalar coeff;
            if (F.descriptor().kind == FieldKind::Prime) {
                coeff = F.from_long((long long)(rng() % (unsigned long long)F.descriptor().p));
            } else {
                coeff = F.from_long((long long)(rng() % 21) - 10);
            }
            for (int k = 0; k < D; ++k)
                phi[size_t(k)] = F.add(phi[size_t(k)], F.mul(coeff, a[size_t(k)]));
        }
        candidates.push_back(std::move(phi));
    }

    for (const auto& phi : candidates) {
        bool nz = false;
        for (const auto& c : phi) nz = nz || !c.is_zero();
        if (!nz) continue;
        if (nondegenerate(phi)) {
            rep.witness_found = true;
            rep.form = phi;
            rep.detail = "witness trace form found";
            return rep;
        }
    }
    rep.detail = "no witness found in " + std::to_string(int(candidates.size())) +
                 " candidates (commutator-annihilator dimension " +
                 std::to_string(rep.commutator_codimension) + ")";
    return rep;
}

} // namespace qgt
