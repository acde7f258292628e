#pragma once

#include "qgt/presentation.hpp"
#include "qgt/surface.hpp"

#include <string>
#include <vector>

namespace qgt::families {

/* Three vertices joined pairwise by double arrows; the quiver of the sphere
 * glued from two triangles along their three edges. */
TriangulationQuiver markov_quiver();
Surface markov_surface();

/* One triangle with all edges on the boundary: a disk, three border loops. */
TriangulationQuiver triangle_disk_quiver();
Surface triangle_disk_surface();

/* Four triangles, one of them self-folded; closed non-orientable surface
 * with g-orbit sizes 1, 2, 3, 6. */
TriangulationQuiver torus_crosscap_quiver();
Surface torus_crosscap_surface();

/* The tetrahedron boundary: six vertices, twelve arrows, f and g both with
 * four 3-orbits. */
TriangulationQuiver tetrahedral_quiver();
Surface tetrahedral_surface();

std::vector<std::string> family_names();
TriangulationQuiver named_quiver(const std::string& name);
Surface named_surface(const std::string& name);

/* Same multiplicity and parameter on every g-orbit, no border deformation. */
WeightData uniform_weights(const TriangulationQuiver& tq, long long m, const Scalar& c);

/* Weights for the four-orbit quiver above, keyed by orbit size: the loop
 * orbit gets (p, a), the 2-orbit (q, b), the 3-orbit (r, c), the 6-orbit
 * (s, d).  Requires p >= 3 and q >= 2. */
WeightData torus_crosscap_weights(const TriangulationQuiver& tq,
                                  long long p, long long q, long long r, long long s,
                                  const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

/* The tetrahedral algebra with multiplicity m >= 1 and deformation scalar
 * lambda: twelve commutativity relations (three of them carrying the lambda
 * term) and twelve vanishing relations.  For m = 1 it coincides with a
 * parameter-tweaked algebra of the tetrahedral quiver; for m >= 2 it is a
 * genuinely different presentation. */
Presentation tetrahedral_presentation(const FieldDescriptor& fd, long long m, const Scalar& lambda);

} // namespace qgt::families
