#pragma once

#include "qgt/linalg.hpp"
#include "qgt/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qgt {

struct AlgebraOptions {
    int bound = 0;                    // starting truncation length; 0 = auto
    int max_bound = 64;               // hard cap for the doubling schedule
    long long max_nodes = 8'000'000;  // per-vertex path-trie budget
    long long max_rows = 40'000'000;  // total ideal-closure row budget
    int jobs = 1;
};

struct BasisWord {
    int vertex = -1;          // source
    std::vector<int> arrows;  // normal-form monomial

    int length() const { return int(arrows.size()); }
};

/* What the truncated build verified before accepting the quotient:
 *   - length_headroom: longest basis word fits with two spare degrees;
 *   - deep_paths_vanish: every trie path longer than the longest basis word
 *     reduces to zero;
 *   - stable_dims: per-vertex per-length dims identical when rebuilt one
 *     degree higher;
 *   - relations_annihilate: every relation evaluates to the zero matrix in
 *     the right regular representation;
 *   - associativity_spot_check: (xy)z = x(yz) on pseudo-random triples.
 * Exact for quotients by admissible ideals; a presentation whose ideal is
 * not admissible can in principle stabilize spuriously. */
struct BuildCertificate {
    int bound = 0;
    int rebuild_bound = 0;
    int max_word_length = 0;
    int nilpotency = 0;
    bool length_headroom = false;
    bool deep_paths_vanish = false;
    bool stable_dims = false;
    bool relations_annihilate = false;
    bool associativity_spot_check = false;
};

struct AlgebraImpl;

/* K-algebra KQ/I on a normal-form monomial basis.  Immutable after build;
 * cheap to copy (shared internals). */
class FiniteDimAlgebra {
public:
    static FiniteDimAlgebra build(const Presentation& p, const AlgebraOptions& opt = {});

    const Presentation& presentation() const;
    const Quiver& quiver() const;
    const Field& field() const;
    bool has_triangulation() const;
    const TriangulationQuiver& triangulation() const;

    int dimension() const;
    int n_vertices() const;
    int vertex_dim(int v) const;     // dim e_vA
    int vertex_offset(int v) const;  // offset of e_vA block in the global basis
    const std::vector<BasisWord>& basis() const;
    std::string basis_word_string(int global_index) const;
    int idempotent_index(int v) const;

    // Normal form of a path, over the local basis of e_{source}A.
    Vec nf_path(const Path& p) const;
    Vec nf_path_global(const Path& p) const;

    // Right multiplication by an arrow on e_vA (square matrix, row vectors).
    const Mat& action(int v, int arrow) const;
    // Product of two elements in global coordinates.
    Vec multiply(const Vec& x, const Vec& y) const;

    int max_word_length() const;
    int nilpotency_index() const;  // least N with J^N = 0
    std::vector<std::vector<int>> radical_layer_dims() const;  // [vertex][length]
    std::vector<int> radical_series() const;                   // dim J^k/J^{k+1}
    std::vector<int> socle_dims() const;                       // dim soc(e_vA) per v
    std::vector<int> socle2_dims() const;                      // dim soc_2(e_vA) per v
    Mat socle_basis(int v) const;  // rows: local coordinates in e_vA

    std::vector<std::vector<long long>> cartan_matrix() const;  // dim e_iAe_j
    i128 cartan_determinant() const;

    const BuildCertificate& certificate() const;

private:
    std::shared_ptr<const AlgebraImpl> impl_;
    explicit FiniteDimAlgebra(std::shared_ptr<const AlgebraImpl> impl) : impl_(std::move(impl)) {}
};

struct SymmetricFormReport {
    bool witness_found = false;
    // Deterministic refutation: some socle vector pairs to zero with the
    // whole algebra under every trace candidate.
    bool refuted = false;
    int commutator_codimension = 0;
    Vec form;  // global dual coordinates of the witness, when found
    std::string detail;
};

/* Searches the annihilator of the commutator subspace for a linear form
 * whose induced bilinear form (x,y) -> phi(xy) is non-degenerate. */
SymmetricFormReport symmetric_form(const FiniteDimAlgebra& A, int trials = 32,
                                   unsigned long long seed = 12345);

} // namespace qgt
