#pragma once

#include "qgt/quiver.hpp"

#include <string>
#include <vector>

namespace qgt {

/* Combinatorial directed triangulated surface: edges, oriented triangles
 * (ordinary or self-folded), and the set of boundary edges.  Each edge lies
 * in exactly two triangle slots, or in one slot when it is a boundary edge;
 * a self-folded triangle uses its folded edge twice. */
struct Triangle {
    bool self_folded = false;
    // ordinary: edges[0..2] in the chosen cyclic orientation
    // self-folded: edges[0] == edges[1] is the folded edge, edges[2] the other
    std::vector<std::string> edges;
};

struct Surface {
    std::vector<std::string> edges;
    std::vector<Triangle> triangles;
    std::vector<std::string> boundary;
};

struct SurfaceCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

SurfaceCheck validate_surface(const Surface& s);

/* The quiver of a directed triangulated surface: vertices are edges of the
 * triangulation; each oriented triangle contributes a 3-cycle of f, each
 * boundary edge an f-fixed loop. */
TriangulationQuiver quiver_of_surface(const Surface& s);

struct CellComplexReport {
    long long vertices = 0; // 0-cells after corner identification
    long long edges = 0;
    long long faces = 0;
    long long euler_characteristic = 0;
    bool orientable = false;
    long long boundary_components = 0;
};

/* Invariants of the canonical glued complex of (Q, f): triangles are the
 * 3-orbits of f, and at every non-border vertex the two in-corners are
 * identified and the two out-corners are identified. */
CellComplexReport cell_complex_of_quiver(const TriangulationQuiver& tq);

/* Same invariants computed directly from surface data, without building the
 * quiver; used as an independent cross-check of cell_complex_of_quiver. */
CellComplexReport cell_complex_of_surface(const Surface& s);

} // namespace qgt
