#include "doctest.h"

#include "test_util.hpp"

#include "qgt/quiver.hpp"

using namespace qgt;
using namespace qgt::families;

namespace {

Quiver two_cycle() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    q.finalize();
    return q;
}

std::vector<TriangulationQuiver> all_families() {
    std::vector<TriangulationQuiver> out;
    for (const auto& n : family_names()) out.push_back(named_quiver(n));
    return out;
}

} // namespace

TEST_CASE("finalize builds lookup tables and flags") {
    TriangulationQuiver tq = markov_quiver();
    const Quiver& q = tq.q;
    CHECK(q.n_vertices() == 3);
    CHECK(q.n_arrows() == 6);
    CHECK(q.two_regular);
    CHECK(q.connected);
    for (size_t v = 0; v < q.n_vertices(); ++v) {
        CHECK(q.out_arrows[v].size() == 2);
        CHECK(q.in_arrows[v].size() == 2);
    }
    CHECK(q.vertex("2") == 1);
    CHECK(q.arrow("sigma") == q.bar[size_t(q.arrow("alpha"))]);
    CHECK_THROWS_AS((void)q.vertex("9"), ValidationError);
    CHECK_THROWS_AS((void)q.arrow("nope"), ValidationError);
    // lex ranks order arrow ids alphabetically
    auto rk = [&](const char* id) { return q.arrow_lex_rank[size_t(q.arrow(id))]; };
    CHECK(rk("alpha") < rk("beta"));
    CHECK(rk("beta") < rk("delta"));
    CHECK(rk("sigma") == 5);
}

TEST_CASE("structural validation catches duplicates") {
    Quiver q;
    q.vertices = {"1", "1"};
    CHECK_THROWS_AS(q.finalize(), ValidationError);
    Quiver r;
    r.vertices = {"1"};
    r.arrows = {{"a", 0, 0}, {"a", 0, 0}};
    CHECK_THROWS_AS(r.finalize(), ValidationError);
}

TEST_CASE("validate_quiver records regularity without failing") {
    Quiver q = two_cycle();
    QuiverCheck chk = validate_quiver(q);
    CHECK(chk.ok);
    CHECK_FALSE(q.two_regular);
    CHECK(q.connected);
}

TEST_CASE("triangulation axioms are enforced by name") {
    TriangulationQuiver tq = markov_quiver();
    const Quiver& q = tq.q;
    auto a = [&](const char* id) { return q.arrow(id); };

    // too few vertices
    CHECK_THROWS_WITH_AS(validate_triangulation(two_cycle(), {{0, 1}}),
                         doctest::Contains("at least 3"), ValidationError);

    // wrong target chaining
    CHECK_THROWS_WITH_AS(
        validate_triangulation(q, {{a("alpha"), a("gamma")}, {a("delta")},
                                   {a("sigma"), a("beta"), a("rho")}}),
        doctest::Contains("condition (b)"), ValidationError);

    // source-target chain fine but f^3 != id: one big 6-cycle
    CHECK_THROWS_WITH_AS(
        validate_triangulation(
            q, {{a("alpha"), a("gamma"), a("delta"), a("sigma"), a("beta"), a("rho")}}),
        doctest::Contains("condition (c)"), ValidationError);

    // fixed point that is not a loop
    CHECK_THROWS_AS(validate_triangulation(q, {{a("alpha")}, {a("gamma")}, {a("delta")},
                                               {a("sigma")}, {a("beta")}, {a("rho")}}),
                    ValidationError);

    // missing arrows
    CHECK_THROWS_AS(validate_triangulation(q, {{a("alpha"), a("gamma"), a("delta")}}),
                    ValidationError);
}

TEST_CASE("bar is the same-source involution") {
    for (const auto& tq : all_families()) {
        const Quiver& q = tq.q;
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            int b = q.bar[a];
            CHECK(b != int(a));
            CHECK(q.src(b) == q.src(int(a)));
            CHECK(q.bar[size_t(b)] == int(a));
            int st = q.star[a];
            CHECK(st != int(a));
            CHECK(q.tgt(st) == q.tgt(int(a)));
        }
    }
}

TEST_CASE("g is bar after f, and bar after g is f") {
    for (const auto& tq : all_families()) {
        const Quiver& q = tq.q;
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            CHECK(tq.g(int(a)) == q.bar[size_t(tq.f(int(a)))]);
            CHECK(q.bar[size_t(tq.g(int(a)))] == tq.f(int(a)));
            CHECK(q.src(tq.g(int(a))) == q.tgt(int(a)));
        }
        // g^(n-1) of an arrow continues into f² of its bar sibling
        for (size_t a = 0; a < q.n_arrows(); ++a) {
            int n = tq.n_alpha(int(a));
            int cur = int(a);
            for (int k = 0; k < n - 1; ++k) cur = tq.g(cur);
            int bar = q.bar[a];
            CHECK(cur == tq.f(tq.f(bar)));
        }
    }
}

TEST_CASE("g-orbit inventories per family") {
    auto profile = [](const TriangulationQuiver& tq) {
        std::vector<int> sizes;
        for (const auto& o : tq.g_orbits) sizes.push_back(int(o.size()));
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    CHECK(profile(markov_quiver()) == std::vector<int>{6});
    CHECK(profile(triangle_disk_quiver()) == std::vector<int>{6});
    CHECK(profile(torus_crosscap_quiver()) == std::vector<int>{1, 2, 3, 6});
    CHECK(profile(tetrahedral_quiver()) == std::vector<int>{3, 3, 3, 3});
    // canonical order: every orbit starts at its lex-least arrow, orbits
    // sorted by that representative
    for (const auto& tq : all_families()) {
        int prev = -1;
        for (const auto& o : tq.g_orbits) {
            int rep = o[0];
            for (int x : o)
                CHECK(tq.q.arrow_lex_rank[size_t(rep)] <= tq.q.arrow_lex_rank[size_t(x)]);
            if (prev != -1)
                CHECK(tq.q.arrow_lex_rank[size_t(prev)] < tq.q.arrow_lex_rank[size_t(rep)]);
            prev = rep;
        }
    }
}

TEST_CASE("border structure") {
    CHECK(border_vertices(markov_quiver()).empty());
    CHECK(border_vertices(torus_crosscap_quiver()).empty());
    CHECK(border_vertices(tetrahedral_quiver()).empty());
    TriangulationQuiver disk = triangle_disk_quiver();
    auto border = border_vertices(disk);
    CHECK(border == std::vector<int>{0, 1, 2});
    CHECK(disk.border_loops.size() == 3);
    for (int v : border) CHECK(disk.is_border_vertex(v));
}

TEST_CASE("special shapes are recognized up to relabeling") {
    CHECK(recognize_special(markov_quiver()) == SpecialShape::Markov);
    CHECK(recognize_special(triangle_disk_quiver()) == SpecialShape::TriangleDisk);
    CHECK(recognize_special(tetrahedral_quiver()) == SpecialShape::Tetrahedral);
    CHECK(recognize_special(torus_crosscap_quiver()) == SpecialShape::Other);
    for (unsigned seed : {1u, 2u, 3u}) {
        CHECK(recognize_special(testutil::relabeled(markov_quiver(), seed)) ==
              SpecialShape::Markov);
        CHECK(recognize_special(testutil::relabeled(triangle_disk_quiver(), seed)) ==
              SpecialShape::TriangleDisk);
        CHECK(recognize_special(testutil::relabeled(tetrahedral_quiver(), seed)) ==
              SpecialShape::Tetrahedral);
        CHECK(recognize_special(testutil::relabeled(torus_crosscap_quiver(), seed)) ==
              SpecialShape::Other);
    }
}

TEST_CASE("relabeling is an isomorphism and families are distinct") {
    for (const auto& tq : all_families()) {
        CHECK(testutil::tq_isomorphic(tq, testutil::relabeled(tq, 5)));
    }
    CHECK_FALSE(testutil::tq_isomorphic(markov_quiver(), triangle_disk_quiver()));
    CHECK_FALSE(testutil::tq_isomorphic(torus_crosscap_quiver(), tetrahedral_quiver()));
}

TEST_CASE("permutation cycles are deterministic") {
    TriangulationQuiver tq = markov_quiver();
    auto cycles = tq.f.cycles();
    REQUIRE(cycles.size() == 2);
    // each cycle listed from its least-index arrow, cycles in index order
    CHECK(tq.q.aname(cycles[0][0]) == "alpha");
    CHECK(tq.q.aname(cycles[1][0]) == "sigma");
    for (const auto& cyc : cycles)
        for (size_t i = 1; i < cyc.size(); ++i) CHECK(cyc[0] < cyc[i]);
    // and the cycle really follows the permutation
    for (const auto& cyc : cycles)
        for (size_t i = 0; i < cyc.size(); ++i) CHECK(tq.f(cyc[i]) == cyc[(i + 1) % cyc.size()]);
}

TEST_CASE("dot export names every arrow") {
    TriangulationQuiver tq = markov_quiver();
    auto cycles = tq.f.cycles();
    std::string dot = export_dot(tq.q, &cycles);
    for (const auto& a : tq.q.arrows) CHECK(dot.find(a.id) != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
}
