#pragma once

#include "qgt/algebra.hpp"
#include "qgt/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgt {

enum class MinRelKind { C, Z, Irregular };

std::string to_string(MinRelKind k);

/* One element of the kernel of the map sending the length-2 paths at a
 * vertex into e_iJ^2/e_iJ^3: a zero class (one path lands in J^3) or a
 * commutativity class (a 2-term dependency with both images nonzero). */
struct MinimalRelation {
    MinRelKind kind = MinRelKind::Irregular;
    std::vector<int> path_pos; // indices into VertexCensus::paths
    std::vector<Scalar> coeffs;
};

struct VertexCensus {
    int vertex = -1;
    std::vector<int> out;          // the two out-arrows (lex order)
    bool has_loop = false;         // some out-arrow is a loop
    bool has_double_arrow = false; // both out-arrows parallel
    std::vector<Path> paths;       // length-2 paths from the vertex, lex order
    int image_rank = 0;            // rank of their images in e_iJ^2/e_iJ^3
    std::vector<MinimalRelation> relations;
    std::string klass;      // "CC", "CZ", "ZZ" or "irregular"
    bool out_dim_ok = false; // dim e_iJ^2/e_iJ^3 == 2
    bool in_dim_ok = false;  // dim J^2e_i/J^3e_i == 2
    bool two_independent = false;
};

struct CensusReport {
    std::vector<VertexCensus> vertices;
    bool all_dims_ok = false;
    bool all_two_independent = false;
    // Forward-propagation consistency of the vertex classes (CC/CZ/ZZ force
    // matching classes on the length-2 paths ending at the vertex).
    int propagation_inconsistencies = 0;
    std::vector<std::string> propagation_notes;
};

// Throws ValidationError when the quiver is not 2-regular.
CensusReport relation_census(const FiniteDimAlgebra& A);

struct DimsCheck {
    bool pass = false;
    std::vector<std::string> offenders;
};

// dim e_iJ^2/e_iJ^3 == 2 and dim J^2e_i/J^3e_i == 2 at every vertex.
DimsCheck jj_dims_check(const FiniteDimAlgebra& A);

struct TriangulationSearch {
    std::optional<std::vector<std::vector<int>>> f_cycles; // first solution
    int solutions_seen = 0;                                // only with enumerate_all
    std::vector<std::vector<std::vector<int>>> all;        // only with enumerate_all
};

/* Backtracking over census partner sets for a permutation with
 * s(f(a)) = t(a), f^3 = id, and a*f(a) occurring in a minimal relation.
 * Deterministic: arrows ascending, candidate partners descending. */
TriangulationSearch find_triangulation(const FiniteDimAlgebra& A, bool enumerate_all = false);

struct FittedWeights {
    WeightData weights;
    bool any_border_term = false; // some b nonzero
};

/* Reads m along socle g-chains and solves a*f(a) = c*A (+ b*B at border
 * loops) in normal form; exact match required, no basis change attempted. */
std::optional<FittedWeights> fit_weights(const FiniteDimAlgebra& A, const TriangulationQuiver& tq);

struct GqtReport {
    std::string field;
    bool two_regular = false;
    bool connected = false;
    int dimension = 0;
    std::vector<int> vertex_dims;
    std::vector<std::vector<long long>> cartan;
    std::string cartan_det;

    bool symmetric_witness = false;
    bool symmetric_refuted = false;
    std::string symmetric_detail;

    std::vector<std::optional<int>> simple_periods; // per vertex
    std::vector<std::optional<int>> tube_ranks;     // per vertex, from periods

    bool census_ran = false;
    bool census_dims_ok = false;
    bool census_two_independent = false;
    int census_propagation_inconsistencies = 0;
    std::vector<std::string> census_classes; // per vertex

    bool triangulation_found = false;
    std::optional<std::vector<std::vector<int>>> f_cycles;

    std::string family = "unknown"; // weighted / deformed / tetrahedral / unknown
    std::optional<FittedWeights> fitted;

    std::string verdict;
    std::vector<std::string> violations;
};

GqtReport gqt_report(const FiniteDimAlgebra& A, int period_bound = 8, int sym_trials = 32,
                     unsigned long long seed = 12345);

} // namespace qgt
