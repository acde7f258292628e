#pragma once

#include "qgt/field.hpp"

#include <optional>
#include <vector>

namespace qgt {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>; // row-major; module elements are row vectors

inline bool is_zero_vec(const Vec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/* In-place reduced row echelon form; returns the pivot column of each
 * surviving row (rows beyond the rank are dropped). */
inline std::vector<int> rref(Mat& m, const Field& F) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Scalar piv = F.inv(m[row][col]);
        for (size_t c = col; c < cols; ++c) m[row][c] = F.mul(m[row][c], piv);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar factor = m[r][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] = F.sub(m[r][c], F.mul(factor, m[row][c]));
        }
        pivots.push_back(int(col));
        ++row;
    }
    m.resize(row);
    return pivots;
}

inline int rank(Mat m, const Field& F) {
    return int(rref(m, F).size());
}

/* Basis of { x : x * m = 0 } as rows (left null space of m). */
inline Mat left_kernel(const Mat& m, const Field& F) {
    size_t n = m.size();
    if (n == 0) return {};
    size_t cols = m[0].size();
    // Transpose, then the right null space of m^T = left null space of m.
    Mat t(cols, Vec(n, F.zero()));
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < cols; ++c) t[c][r] = m[r][c];
    Mat work = t;
    std::vector<int> piv = rref(work, F);
    std::vector<bool> is_piv(n, false);
    for (int p : piv) is_piv[size_t(p)] = true;
    Mat basis;
    for (size_t free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        Vec x(n, F.zero());
        x[free] = F.one();
        for (size_t r = 0; r < work.size(); ++r) {
            // pivot variable piv[r] = -sum(free part)
            x[size_t(piv[r])] = F.neg(work[r][free]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/* Solves c * rows = target; returns the coefficient vector or nullopt. */
inline std::optional<Vec> solve_in_span(const Mat& rows, const Vec& target, const Field& F) {
    size_t n = rows.size();
    size_t cols = target.size();
    // Augment: eliminate on [rows^T | target^T] columns.
    Mat work(cols, Vec(n + 1, F.zero()));
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < cols; ++c) work[c][r] = rows[r][c];
    for (size_t c = 0; c < cols; ++c) work[c][n] = target[c];
    std::vector<int> piv = rref(work, F);
    Vec coeff(n, F.zero());
    for (size_t r = 0; r < work.size(); ++r) {
        if (piv[r] == int(n)) return std::nullopt; // inconsistent
        coeff[size_t(piv[r])] = work[r][n];
    }
    return coeff;
}

/* Row space membership test without solving for coefficients. */
inline bool in_span(const Mat& rows, const Vec& target, const Field& F) {
    return solve_in_span(rows, target, F).has_value();
}

} // namespace qgt
