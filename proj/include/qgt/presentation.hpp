#pragma once

#include "qgt/field.hpp"
#include "qgt/quiver.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qgt {

/* Paths compose left to right: {a, b} is "a then b" and needs t(a) = s(b).
 * The source vertex makes length-0 paths unambiguous. */
struct Path {
    int source = -1;
    std::vector<int> arrows;

    int length() const { return int(arrows.size()); }
    int target(const Quiver& q) const {
        return arrows.empty() ? source : q.tgt(arrows.back());
    }
    bool composable(const Quiver& q) const;
    bool operator==(const Path&) const = default;
};

std::string path_to_string(const Quiver& q, const Path& p);

/* K-linear combination of parallel paths, kept sorted (length, then arrow
 * ids) with zero coefficients dropped. */
struct PathExpr {
    std::vector<std::pair<Path, Scalar>> terms;

    void add(const Quiver& q, const Field& F, const Path& p, const Scalar& coeff);
    bool empty() const { return terms.empty(); }
};

std::string path_expr_to_string(const Quiver& q, const Field& F, const PathExpr& e);

/* Weight and parameter data for a triangulation quiver: multiplicity m and
 * parameter c per g-orbit (keyed by the orbit's representative arrow), and a
 * border deformation scalar b per border vertex (absent means 0). */
struct WeightData {
    std::map<int, long long> m; // orbit rep arrow -> multiplicity >= 1
    std::map<int, Scalar> c;    // orbit rep arrow -> nonzero parameter
    std::map<int, Scalar> b;    // border vertex -> deformation scalar

    long long m_of(const TriangulationQuiver& tq, int arrow) const;
    Scalar c_of(const TriangulationQuiver& tq, int arrow) const;
};

/* Requires m >= 1 and c != 0 on every g-orbit, m*n >= 3 for every arrow, and
 * b supported only on border vertices. */
void validate_weights(const TriangulationQuiver& tq, const Field& F, const WeightData& w);

/* The g-chain a, g(a), g^2(a), ... of the given length, as a path. */
Path g_chain(const TriangulationQuiver& tq, int arrow, int length);

/* Longest proper initial segment of the cyclic relation monomial at `arrow`:
 * the g-chain of length m*n - 1. */
Path a_path(const TriangulationQuiver& tq, const WeightData& w, int arrow);

/* Full cycle monomial: the g-chain of length m*n. */
Path b_path(const TriangulationQuiver& tq, const WeightData& w, int arrow);

struct Presentation {
    Quiver quiver;
    FieldDescriptor field;
    std::vector<PathExpr> relations;
    // Present when the quiver carries a triangulation structure; lets the
    // algebra engine prefer g-cycle monomials as normal forms.
    std::optional<std::vector<std::vector<int>>> f_cycles;
};

/* Relations of the weighted triangulation algebra: for every arrow a, the
 * commutativity relation a*f(a) - c*A and the zero relation a*f(a)*g(f(a)),
 * in arrow-id order. */
std::vector<PathExpr> weighted_relations(const TriangulationQuiver& tq, const Field& F, const WeightData& w);

/* Same, with the border deformation term b*B added at each border loop. */
std::vector<PathExpr> deformed_relations(const TriangulationQuiver& tq, const Field& F, const WeightData& w);

Presentation weighted_presentation(const TriangulationQuiver& tq, const FieldDescriptor& fd, const WeightData& w);
Presentation deformed_presentation(const TriangulationQuiver& tq, const FieldDescriptor& fd, const WeightData& w);

/* Validates composability, parallel terms, all paths of length >= 2, and no
 * empty relations. */
void validate_presentation(const Presentation& p);

/* Relation DSL:
 *   relation := term (("+"|"-") term)*
 *   term     := [scalar ("*"|" ")] path
 *   path     := arrowId ("*" arrowId)*
 * one relation per line, '#' starts a comment. */
std::vector<PathExpr> parse_relations(const std::string& text, const Quiver& q, const Field& F);
std::string serialize_relations(const Quiver& q, const Field& F, const std::vector<PathExpr>& relations);

} // namespace qgt
