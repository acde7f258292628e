#pragma once

#include "qgt/algebra.hpp"

#include <optional>
#include <vector>

namespace qgt {

/* Finite-dimensional right module over KQ/I: one space per vertex, one
 * matrix per arrow mapping the source block to the target block (row
 * vectors act on the left of the matrix). */
struct Module {
    std::vector<int> dims;
    std::vector<Mat> act; // per arrow: dims[src] x dims[tgt]
};

int module_dim(const Module& m);
bool module_is_zero(const Module& m);

// Throws ValidationError when shapes are wrong or a relation acts nonzero.
void check_module(const FiniteDimAlgebra& A, const Module& m);

Module simple_module(const FiniteDimAlgebra& A, int v);
Module projective_module(const FiniteDimAlgebra& A, int v);

// Dimension vector of M / M.rad(A), the multiplicity of each simple on top.
std::vector<int> top_dims(const FiniteDimAlgebra& A, const Module& m);

/* Kernel of a projective cover P(M) -> M.  The cover lifts top
 * representatives through the lex-first complement of M.rad(A); a nonzero
 * seed perturbs the lift by radical vectors (the kernel is unchanged up to
 * isomorphism, which the tests exercise).  cover_mults, when given, receives
 * the multiplicity of each indecomposable projective summand. */
Module syzygy(const FiniteDimAlgebra& A, const Module& m,
              std::vector<int>* cover_mults = nullptr, unsigned long long lift_seed = 0);

struct ResolutionStep {
    std::vector<int> cover_multiplicities; // per vertex
    std::vector<int> syzygy_dims;          // per vertex
};

struct Resolution {
    int vertex = -1;
    int bound = 0;
    std::vector<ResolutionStep> steps;
    std::optional<int> period; // least k in [1, bound] with syzygy^k(S) = S
};

Resolution resolve_simple(const FiniteDimAlgebra& A, int v, int bound = 8);
std::optional<int> period_of_simple(const FiniteDimAlgebra& A, int v, int bound = 8);

// Rank of the stable tube a module of the given syzygy period sits on.
std::optional<int> tube_rank_of_period(int period);

} // namespace qgt
