#pragma once

#include "qgt/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgt {

struct Arrow {
    std::string id;
    int src = -1;
    int tgt = -1;
};

/* Finite quiver with stable vertex/arrow order.  Lookup tables and the
 * bar/star involutions (defined only when 2-regular) are filled by
 * finalize(). */
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::map<std::string, int> vertex_index;
    std::map<std::string, int> arrow_index;
    std::vector<std::vector<int>> out_arrows; // per vertex, in arrow order
    std::vector<std::vector<int>> in_arrows;
    std::vector<int> arrow_lex_rank; // rank of each arrow under id-lex order

    bool two_regular = false;
    bool connected = false;

    // bar[a]: the other arrow with the same source; star[a]: same target.
    std::vector<int> bar;
    std::vector<int> star;

    void finalize();

    int vertex(const std::string& id) const;
    int arrow(const std::string& id) const;
    const std::string& vname(int v) const { return vertices[size_t(v)]; }
    const std::string& aname(int a) const { return arrows[size_t(a)].id; }
    int src(int a) const { return arrows[size_t(a)].src; }
    int tgt(int a) const { return arrows[size_t(a)].tgt; }
    size_t n_vertices() const { return vertices.size(); }
    size_t n_arrows() const { return arrows.size(); }
};

struct QuiverCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

/* Structural soundness: unique ids, endpoints exist; records (without
 * failing) whether the quiver is 2-regular and connected. */
QuiverCheck validate_quiver(const Quiver& q);

/* Permutation of the arrow set, stored by arrow index. */
struct ArrowPermutation {
    std::vector<int> map;

    int operator()(int a) const { return map[size_t(a)]; }
    std::vector<std::vector<int>> cycles() const;
};

/* (Q, f) with f satisfying: Q 2-regular and connected with >= 3 vertices,
 * t(a) = s(f(a)), f^3 = id.  g = bar . f is derived, with its orbits cached
 * in canonical order (each orbit starts at its lex-least arrow id; orbits
 * sorted by that representative). */
struct TriangulationQuiver {
    Quiver q;
    ArrowPermutation f;
    ArrowPermutation g;
    std::vector<std::vector<int>> g_orbits;
    std::vector<int> g_orbit_of;   // arrow -> orbit position in g_orbits
    std::vector<int> border_loops; // f-fixed loops, in arrow order

    int n_alpha(int a) const { return int(g_orbits[size_t(g_orbit_of[size_t(a)])].size()); }
    int g_orbit_rep(int a) const { return g_orbits[size_t(g_orbit_of[size_t(a)])][0]; }
    bool is_border_vertex(int v) const;
};

/* Builds and fully checks the triangulation structure; throws
 * ValidationError naming the violated condition. */
TriangulationQuiver validate_triangulation(const Quiver& q, const std::vector<std::vector<int>>& f_cycles);

/* Border of (Q, f): the vertices carrying an f-fixed loop. */
std::vector<int> border_vertices(const TriangulationQuiver& tq);

enum class SpecialShape { Markov, Tetrahedral, TriangleDisk, Other };

std::string to_string(SpecialShape s);

/* Label-independent shape tests:
 *   Markov       - 3 vertices, each pair joined by a double arrow
 *   Tetrahedral  - 6 vertices, 12 arrows, f and g both have four 3-orbits
 *   TriangleDisk - 3 vertices, all of them border, one ordinary 3-orbit */
SpecialShape recognize_special(const TriangulationQuiver& tq);

/* GraphViz output; arrows colored by f-orbit when a triangulation structure
 * is supplied. */
std::string export_dot(const Quiver& q, const std::vector<std::vector<int>>* f_cycles = nullptr);

} // namespace qgt
