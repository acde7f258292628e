#include "qgt/module.hpp"

#include "qgt/errors.hpp"

#include <algorithm>
#include <random>

namespace qgt {

namespace {

Mat zero_mat(int r, int c, const Field& F) { return Mat(size_t(r), Vec(size_t(c), F.zero())); }

Vec row_times(const Vec& x, const Mat& m, size_t cols, const Field& F) {
    Vec out(cols, F.zero());
    for (size_t r = 0; r < x.size(); ++r) {
        if (x[r].is_zero()) continue;
        for (size_t c = 0; c < cols; ++c)
            out[c] = F.add(out[c], F.mul(x[r], m[r][c]));
    }
    return out;
}

} // namespace

int module_dim(const Module& m) {
    int d = 0;
    for (int x : m.dims) d += x;
    return d;
}

bool module_is_zero(const Module& m) { return module_dim(m) == 0; }

void check_module(const FiniteDimAlgebra& A, const Module& m) {
    const Quiver& q = A.quiver();
    const Field& F = A.field();
    if (m.dims.size() != q.n_vertices()) throw ValidationError("module has wrong vertex count");
    if (m.act.size() != q.n_arrows()) throw ValidationError("module has wrong arrow count");
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        size_t rows = size_t(m.dims[size_t(q.src(int(a)))]);
        size_t cols = size_t(m.dims[size_t(q.tgt(int(a)))]);
        if (m.act[a].size() != rows)
            throw ValidationError("module matrix for arrow " + q.aname(int(a)) + " has wrong rows");
        for (const auto& r : m.act[a])
            if (r.size() != cols)
                throw ValidationError("module matrix for arrow " + q.aname(int(a)) +
                                      " has wrong columns");
    }
    for (const auto& expr : A.presentation().relations) {
        int i = expr.terms.front().first.source;
        int j = expr.terms.front().first.target(q);
        Mat sum = zero_mat(m.dims[size_t(i)], m.dims[size_t(j)], F);
        for (const auto& [path, coeff] : expr.terms) {
            Mat cur = zero_mat(m.dims[size_t(i)], m.dims[size_t(i)], F);
            for (size_t r = 0; r < cur.size(); ++r) cur[r][r] = F.one();
            for (int a : path.arrows) {
                Mat nxt = zero_mat(int(cur.size()), m.dims[size_t(q.tgt(a))], F);
                for (size_t r = 0; r < cur.size(); ++r)
                    nxt[r] = row_times(cur[r], m.act[size_t(a)], nxt[r].size(), F);
                cur = std::move(nxt);
            }
            for (size_t r = 0; r < sum.size(); ++r)
                for (size_t c = 0; c < sum[r].size(); ++c)
                    sum[r][c] = F.add(sum[r][c], F.mul(coeff, cur[r][c]));
        }
        for (const auto& r : sum)
            if (!is_zero_vec(r))
                throw ValidationError("relation " + path_expr_to_string(q, F, expr) +
                                      " does not annihilate the module");
    }
}

Module simple_module(const FiniteDimAlgebra& A, int v) {
    const Quiver& q = A.quiver();
    const Field& F = A.field();
    Module m;
    m.dims.assign(q.n_vertices(), 0);
    m.dims[size_t(v)] = 1;
    for (size_t a = 0; a < q.n_arrows(); ++a)
        m.act.push_back(zero_mat(m.dims[size_t(q.src(int(a)))], m.dims[size_t(q.tgt(int(a)))], F));
    return m;
}

Module projective_module(const FiniteDimAlgebra& A, int v) {
    const Quiver& q = A.quiver();
    const Field& F = A.field();
    int d = A.vertex_dim(v);
    // Per-vertex positions of the local basis words of e_vA.
    std::vector<int> tgt_of(size_t(d), -1), block_of(size_t(d), -1);
    std::vector<int> block_sizes(q.n_vertices(), 0);
    const auto& words = A.basis();
    int off = A.vertex_offset(v);
    for (int k = 0; k < d; ++k) {
        Path p{v, words[size_t(off + k)].arrows};
        tgt_of[size_t(k)] = p.target(q);
        block_of[size_t(k)] = block_sizes[size_t(tgt_of[size_t(k)])]++;
    }

    Module m;
    m.dims.assign(q.n_vertices(), 0);
    for (size_t j = 0; j < q.n_vertices(); ++j) m.dims[j] = block_sizes[j];
    for (size_t a = 0; a < q.n_arrows(); ++a) {
        int sa = q.src(int(a)), ta = q.tgt(int(a));
        Mat mat = zero_mat(m.dims[size_t(sa)], m.dims[size_t(ta)], F);
        const Mat& full = A.action(v, int(a));
        for (int k = 0; k < d; ++k) {
            if (tgt_of[size_t(k)] != sa) continue;
            for (int c = 0; c < d; ++c) {
                if (full[size_t(k)][size_t(c)].is_zero()) continue;
                mat[size_t(block_of[size_t(k)])][size_t(block_of[size_t(c)])] =
                    full[size_t(k)][size_t(c)];
            }
        }
        m.act.push_back(std::move(mat));
    }
    return m;
}

std::vector<int> top_dims(const FiniteDimAlgebra& A, const Module& m) {
    const Quiver& q = A.quiver();
    const Field& F = A.field();
    std::vector<int> out(q.n_vertices(), 0);
    for (size_t j = 0; j < q.n_vertices(); ++j) {
        Mat rad;
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            if (size_t(q.tgt(int(a))) != j) continue;
            for (const auto& r : m.act[a]) rad.push_back(r);
        }
        int rk = rad.empty() ? 0 : rank(rad, F);
        out[j] = m.dims[j] - rk;
    }
    return out;
}

Module syzygy(const FiniteDimAlgebra& A, const Module& m, std::vector<int>* cover_mults,
              unsigned long long lift_seed) {
    const Quiver& q = A.quiver();
    const Field& F = A.field();
    size_t nv = q.n_vertices();

    // Radical subspace of each block, in RREF.
    std::vector<Mat> rad(nv);
    for (size_t j = 0; j < nv; ++j) {
        Mat rows;
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            if (size_t(q.tgt(int(a))) != j) continue;
            for (const auto& r : m.act[a]) rows.push_back(r);
        }
        rref(rows, F);
        rad[j] = std::move(rows);
    }

    // Top representatives: lex-first complement, optionally shifted by
    // radical vectors (same cover up to isomorphism).
    std::mt19937_64 rng(lift_seed);
    struct Summand {
        int v;
        Vec rep;
    };
    std::vector<Summand> summands;
    std::vector<int> mults(nv, 0);
    for (size_t j = 0; j < nv; ++j) {
        std::vector<bool> piv(size_t(m.dims[j]), false);
        Mat work = rad[j];
        for (int p : rref(work, F)) piv[size_t(p)] = true;
        for (int c = 0; c < m.dims[j]; ++c) {
            if (piv[size_t(c)]) continue;
            Vec rep(size_t(m.dims[j]), F.zero());
            rep[size_t(c)] = F.one();
            if (lift_seed != 0) {
                for (const auto& rr : rad[j]) {
                    long long coeff = (long long)(rng() % 7) - 3;
                    if (coeff == 0) continue;
                    Scalar s = F.from_long(coeff);
                    for (size_t k = 0; k < rep.size(); ++k)
                        rep[k] = F.add(rep[k], F.mul(s, rr[k]));
                }
            }
            summands.push_back(Summand{int(j), std::move(rep)});
            mults[j]++;
        }
    }
    if (cover_mults) *cover_mults = mults;

    // Positions of the projective cover's basis, blocked by target vertex:
    // summand-major, then the local basis order of e_vA.
    struct Pos {
        int summand;
        int local; // local basis index within e_vA
    };
    std::vector<std::vector<Pos>> block(nv);
    const auto& words = A.basis();
    for (size_t s = 0; s < summands.size(); ++s) {
        int v = summands[s].v;
        int d = A.vertex_dim(v);
        int off = A.vertex_offset(v);
        for (int k = 0; k < d; ++k) {
            Path p{v, words[size_t(off + k)].arrows};
            block[size_t(p.target(q))].push_back(Pos{int(s), k});
        }
    }

    // The cover map on each basis element: representative pushed along the word.
    auto push_word = [&](const Vec& start, int v, const std::vector<int>& arrows) {
        Vec cur = start;
        int at = v;
        for (int a : arrows) {
            cur = row_times(cur, m.act[size_t(a)], size_t(m.dims[size_t(q.tgt(a))]), F);
            at = q.tgt(a);
        }
        (void)at;
        return cur;
    };

    std::vector<Mat> kernel(nv); // rows: coordinates over block[j]
    for (size_t j = 0; j < nv; ++j) {
        Mat phi;
        for (const Pos& pos : block[j]) {
            const Summand& s = summands[size_t(pos.summand)];
            const BasisWord& w = words[size_t(A.vertex_offset(s.v) + pos.local)];
            phi.push_back(push_word(s.rep, s.v, w.arrows));
        }
        if (phi.empty()) {
            kernel[j] = {};
        } else {
            kernel[j] = left_kernel(phi, F);
        }
    }

    Module out;
    out.dims.assign(nv, 0);
    for (size_t j = 0; j < nv; ++j) out.dims[j] = int(kernel[j].size());

    // Index of each (summand, local) pair within its block.
    std::vector<std::vector<int>> pos_in_block(summands.size());
    for (size_t s = 0; s < summands.size(); ++s)
        pos_in_block[s].assign(size_t(A.vertex_dim(summands[s].v)), -1);
    for (size_t j = 0; j < nv; ++j)
        for (size_t r = 0; r < block[j].size(); ++r)
            pos_in_block[size_t(block[j][r].summand)][size_t(block[j][r].local)] = int(r);

    for (size_t a = 0; a < q.n_arrows(); ++a) {
        size_t sj = size_t(q.src(int(a))), tj = size_t(q.tgt(int(a)));
        Mat mat = zero_mat(out.dims[sj], out.dims[tj], F);
        for (size_t r = 0; r < kernel[sj].size(); ++r) {
            // Image of the kernel row under right multiplication by the arrow.
            Vec img(block[tj].size(), F.zero());
            for (size_t p = 0; p < block[sj].size(); ++p) {
                const Scalar& c = kernel[sj][r][p];
                if (c.is_zero()) continue;
                const Pos& pos = block[sj][p];
                const Summand& s = summands[size_t(pos.summand)];
                const Mat& action = A.action(s.v, int(a));
                const Vec& arow = action[size_t(pos.local)];
                for (size_t k = 0; k < arow.size(); ++k) {
                    if (arow[k].is_zero()) continue;
                    int bp = pos_in_block[size_t(pos.summand)][k];
                    img[size_t(bp)] = F.add(img[size_t(bp)], F.mul(c, arow[k]));
                }
            }
            if (kernel[tj].empty()) {
                if (!is_zero_vec(img))
                    throw ValidationError("internal: syzygy action leaves the kernel");
                continue;
            }
            auto coeff = solve_in_span(kernel[tj], img, F);
            if (!coeff) throw ValidationError("internal: syzygy action leaves the kernel");
            mat[r] = *coeff;
        }
        out.act.push_back(std::move(mat));
    }
    return out;
}

Resolution resolve_simple(const FiniteDimAlgebra& A, int v, int bound) {
    Resolution res;
    res.vertex = v;
    res.bound = bound;
    Module cur = simple_module(A, v);
    for (int k = 1; k <= bound; ++k) {
        std::vector<int> mults;
        Module next = syzygy(A, cur, &mults);
        ResolutionStep step;
        step.cover_multiplicities = mults;
        step.syzygy_dims = next.dims;
        res.steps.push_back(step);
        bool is_simple_again = module_dim(next) == 1 && next.dims[size_t(v)] == 1;
        if (is_simple_again) {
            res.period = k;
            break;
        }
        if (module_is_zero(next)) break; // projective simple: no period
        cur = std::move(next);
    }
    return res;
}

std::optional<int> period_of_simple(const FiniteDimAlgebra& A, int v, int bound) {
    return resolve_simple(A, v, bound).period;
}

std::optional<int> tube_rank_of_period(int period) {
    if (period <= 0) return std::nullopt;
    if (period <= 2) return 1;
    if (period % 2 == 0) return period / 2;
    return std::nullopt;
}

} // namespace qgt
