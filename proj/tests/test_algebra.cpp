#include "doctest.h"

#include "qgt/algebra.hpp"
#include "qgt/errors.hpp"
#include "qgt/families.hpp"

#include <cstdint>
#include <numeric>

using namespace qgt;
using namespace qgt::families;

namespace {

FieldDescriptor rationals() { return FieldDescriptor{FieldKind::Rationals, 0}; }
FieldDescriptor gf(long long p) { return FieldDescriptor{FieldKind::Prime, p}; }

FiniteDimAlgebra build_weighted(const std::string& family, const FieldDescriptor& fd,
                                long long m, long long c) {
    TriangulationQuiver tq = named_quiver(family);
    Field F{fd};
    WeightData w = uniform_weights(tq, m, F.from_long(c));
    return FiniteDimAlgebra::build(weighted_presentation(tq, fd, w));
}

long long expected_dimension(const TriangulationQuiver& tq, const WeightData& w) {
    long long total = 0;
    for (const auto& orbit : tq.g_orbits) {
        long long n = (long long)orbit.size();
        total += w.m.at(orbit.front()) * n * n;
    }
    return total;
}

Presentation a2_presentation() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    q.finalize();
    Presentation p;
    p.quiver = q;
    p.field = rationals();
    return p;
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Vec random_element(const FiniteDimAlgebra& A, uint64_t& s) {
    Vec x(size_t(A.dimension()), A.field().zero());
    for (auto& c : x) c = A.field().from_long((long long)(splitmix(s) % 11) - 5);
    return x;
}

} // namespace

TEST_CASE("sphere algebra over GF(5): dimensions and filtration") {
    FiniteDimAlgebra A = build_weighted("markov", gf(5), 1, 1);
    CHECK(A.dimension() == 36);
    for (int v = 0; v < 3; ++v) CHECK(A.vertex_dim(v) == 12);
    CHECK(A.max_word_length() == 6);
    CHECK(A.nilpotency_index() == 7);
    CHECK(A.radical_series() == std::vector<int>{3, 6, 6, 6, 6, 6, 3});
    CHECK(A.socle_dims() == std::vector<int>{1, 1, 1});

    auto C = A.cartan_matrix();
    for (const auto& row : C)
        for (long long x : row) CHECK(x == 4);
    CHECK(A.cartan_determinant() == 0);
}

TEST_CASE("doubling the multiplicity doubles everything") {
    FiniteDimAlgebra A = build_weighted("markov", gf(5), 2, 1);
    CHECK(A.dimension() == 72);
    for (int v = 0; v < 3; ++v) CHECK(A.vertex_dim(v) == 24);
    CHECK(A.nilpotency_index() == 13);
    CHECK(A.cartan_determinant() == 0);
    auto C = A.cartan_matrix();
    long long row_sum = std::accumulate(C[0].begin(), C[0].end(), 0ll);
    CHECK(row_sum == 24);
}

TEST_CASE("dimension formulas hold across families, weights, and fields") {
    struct Case {
        std::string family;
        long long m;
    };
    for (const auto& [family, m] : {Case{"markov", 1}, Case{"markov", 2},
                                    Case{"triangle-disk", 1}, Case{"tetrahedral", 1}}) {
        for (const auto& fd : {rationals(), gf(5)}) {
            TriangulationQuiver tq = named_quiver(family);
            Field F{fd};
            WeightData w = uniform_weights(tq, m, F.from_long(1));
            FiniteDimAlgebra A = FiniteDimAlgebra::build(weighted_presentation(tq, fd, w));
            CAPTURE(family);
            CAPTURE(m);
            CHECK(A.dimension() == expected_dimension(tq, w));
            // dim e_v A = m*n at one arrow out of v plus m*n at the other
            for (size_t v = 0; v < tq.q.n_vertices(); ++v) {
                int x = tq.q.out_arrows[v][0], y = tq.q.out_arrows[v][1];
                long long want = w.m_of(tq, x) * tq.n_alpha(x) + w.m_of(tq, y) * tq.n_alpha(y);
                CHECK(A.vertex_dim(int(v)) == want);
            }
            // nilpotency: one more than the largest cycle length
            long long mn_max = 0;
            for (const auto& orbit : tq.g_orbits)
                mn_max = std::max(mn_max, w.m.at(orbit.front()) * (long long)orbit.size());
            CHECK(A.nilpotency_index() == mn_max + 1);
            // Cartan row sums are the vertex dimensions
            auto C = A.cartan_matrix();
            for (size_t v = 0; v < tq.q.n_vertices(); ++v)
                CHECK(std::accumulate(C[v].begin(), C[v].end(), 0ll) == A.vertex_dim(int(v)));
        }
    }

    // mixed weights on the four-orbit quiver
    TriangulationQuiver tc = torus_crosscap_quiver();
    Field F{rationals()};
    WeightData w = torus_crosscap_weights(tc, 3, 2, 1, 1, F.one(), F.one(), F.one(), F.one());
    FiniteDimAlgebra A = FiniteDimAlgebra::build(weighted_presentation(tc, rationals(), w));
    CHECK(A.dimension() == 56);
    CHECK(A.dimension() == expected_dimension(tc, w));
    std::vector<int> vdims;
    for (int v = 0; v < A.n_vertices(); ++v) vdims.push_back(A.vertex_dim(v));
    CHECK(vdims == std::vector<int>{10, 9, 9, 7, 9, 12});
    CHECK(A.cartan_determinant() == 0);
}

TEST_CASE("structure constants do not depend on the coefficient field") {
    FiniteDimAlgebra a = build_weighted("markov", gf(5), 1, 1);
    FiniteDimAlgebra b = build_weighted("markov", gf(7), 1, 1);
    FiniteDimAlgebra c = build_weighted("markov", rationals(), 1, 1);
    CHECK(a.radical_layer_dims() == b.radical_layer_dims());
    CHECK(b.radical_layer_dims() == c.radical_layer_dims());
    CHECK(a.cartan_matrix() == b.cartan_matrix());
    CHECK(b.cartan_matrix() == c.cartan_matrix());
    CHECK(a.socle_dims() == c.socle_dims());
    // and the basis is labeled by the same monomials
    REQUIRE(a.dimension() == c.dimension());
    for (int i = 0; i < a.dimension(); ++i)
        CHECK(a.basis_word_string(i) == c.basis_word_string(i));
}

TEST_CASE("border deformation preserves the radical filtration") {
    TriangulationQuiver tq = triangle_disk_quiver();
    Field F{gf(2)};
    WeightData w = uniform_weights(tq, 1, F.one());
    WeightData wb = w;
    for (int v : border_vertices(tq)) wb.b[v] = F.one();
    REQUIRE(wb.b.size() == 3);
    FiniteDimAlgebra plain = FiniteDimAlgebra::build(weighted_presentation(tq, gf(2), w));
    FiniteDimAlgebra def = FiniteDimAlgebra::build(deformed_presentation(tq, gf(2), wb));
    CHECK(plain.dimension() == 36);
    CHECK(def.dimension() == 36);
    CHECK(plain.radical_layer_dims() == def.radical_layer_dims());
    CHECK(plain.cartan_matrix() == def.cartan_matrix());
    CHECK(plain.socle_dims() == def.socle_dims());
}

TEST_CASE("tetrahedral algebra dimensions") {
    Field F{rationals()};
    for (long long lambda : {0ll, 1ll}) {
        Presentation p = tetrahedral_presentation(rationals(), 1, F.from_long(lambda));
        FiniteDimAlgebra A = FiniteDimAlgebra::build(p);
        CAPTURE(lambda);
        CHECK(A.dimension() == 36);
        for (int v = 0; v < 6; ++v) CHECK(A.vertex_dim(v) == 6);
        CHECK(A.cartan_determinant() == 0);
    }
    for (long long lambda : {0ll, 1ll}) {
        Presentation p = tetrahedral_presentation(gf(5), 2, Field{gf(5)}.from_long(lambda));
        FiniteDimAlgebra A = FiniteDimAlgebra::build(p);
        CAPTURE(lambda);
        CHECK(A.dimension() == 72);
        for (int v = 0; v < 6; ++v) CHECK(A.vertex_dim(v) == 12);
    }
}

TEST_CASE("relations hold in the quotient") {
    TriangulationQuiver tq = markov_quiver();
    Field F{gf(5)};
    WeightData w = uniform_weights(tq, 1, F.from_long(2));
    FiniteDimAlgebra A = FiniteDimAlgebra::build(weighted_presentation(tq, gf(5), w));

    int alpha = tq.q.arrow("alpha");
    int bar = tq.q.bar[size_t(alpha)];
    // commutativity: alpha*f(alpha) equals c times the long path at sigma
    Vec lhs = A.nf_path(Path{tq.q.src(alpha), {alpha, tq.f(alpha)}});
    Vec rhs = A.nf_path(a_path(tq, w, bar));
    REQUIRE(lhs.size() == rhs.size());
    for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == F.mul(F.from_long(2), rhs[i]));

    // the full cycle survives (socle), one step further vanishes
    CHECK_FALSE(is_zero_vec(A.nf_path(b_path(tq, w, alpha))));
    CHECK(is_zero_vec(A.nf_path(g_chain(tq, alpha, 7))));
    // vanishing relation
    int fa = tq.f(alpha);
    CHECK(is_zero_vec(A.nf_path(Path{tq.q.src(alpha), {alpha, fa, tq.g(fa)}})));
}

TEST_CASE("basis consists of cycle-path monomials") {
    for (const auto& family : family_names()) {
        TriangulationQuiver tq = named_quiver(family);
        Field F{rationals()};
        WeightData w = family == "torus-crosscap"
                           ? torus_crosscap_weights(tq, 3, 2, 1, 1, F.one(), F.one(), F.one(), F.one())
                           : uniform_weights(tq, 1, F.one());
        FiniteDimAlgebra A = FiniteDimAlgebra::build(weighted_presentation(tq, rationals(), w));
        CAPTURE(family);
        for (const auto& word : A.basis()) {
            for (size_t i = 0; i + 1 < word.arrows.size(); ++i)
                CHECK(word.arrows[i + 1] == tq.g(word.arrows[i]));
        }
    }
}

TEST_CASE("multiplication is associative and unital") {
    FiniteDimAlgebra A = build_weighted("markov", gf(5), 1, 1);
    const Field& F = A.field();
    Vec one(size_t(A.dimension()), F.zero());
    for (int v = 0; v < A.n_vertices(); ++v) one[size_t(A.idempotent_index(v))] = F.one();

    uint64_t s = 42;
    for (int round = 0; round < 1000; ++round) {
        Vec x = random_element(A, s), y = random_element(A, s), z = random_element(A, s);
        Vec xy = A.multiply(x, y);
        CHECK(A.multiply(xy, z) == A.multiply(x, A.multiply(y, z)));
        if (round < 50) {
            CHECK(A.multiply(one, x) == x);
            CHECK(A.multiply(x, one) == x);
        }
    }
}

TEST_CASE("basis bookkeeping") {
    FiniteDimAlgebra A = build_weighted("markov", rationals(), 1, 1);
    const Quiver& q = A.quiver();
    CHECK(A.has_triangulation());
    int off = 0;
    for (int v = 0; v < A.n_vertices(); ++v) {
        CHECK(A.vertex_offset(v) == off);
        off += A.vertex_dim(v);
        int idem = A.idempotent_index(v);
        CHECK(A.basis()[size_t(idem)].length() == 0);
        CHECK(A.basis()[size_t(idem)].vertex == v);
        CHECK(A.basis_word_string(idem) == "e_" + q.vname(v));
    }
    CHECK(off == A.dimension());

    // nf of an arrow is a unit coordinate vector at its own basis slot
    int alpha = q.arrow("alpha");
    Vec nf = A.nf_path(Path{q.src(alpha), {alpha}});
    int hits = 0;
    for (const auto& c : nf)
        if (!c.is_zero()) ++hits;
    CHECK(hits == 1);
}

TEST_CASE("build certificate records the verification") {
    FiniteDimAlgebra A = build_weighted("markov", gf(5), 1, 1);
    const BuildCertificate& cert = A.certificate();
    CHECK(cert.length_headroom);
    CHECK(cert.deep_paths_vanish);
    CHECK(cert.stable_dims);
    CHECK(cert.relations_annihilate);
    CHECK(cert.associativity_spot_check);
    CHECK(cert.max_word_length == 6);
    CHECK(cert.nilpotency == 7);
    CHECK(cert.bound >= 8);
}

TEST_CASE("resource caps abort the build loudly") {
    TriangulationQuiver tq = markov_quiver();
    WeightData w = uniform_weights(tq, 1, Scalar{1, 1});
    Presentation p = weighted_presentation(tq, rationals(), w);

    AlgebraOptions tiny_nodes;
    tiny_nodes.max_nodes = 4;
    CHECK_THROWS_AS(FiniteDimAlgebra::build(p, tiny_nodes), CapError);

    AlgebraOptions low_cap;
    low_cap.max_bound = 4; // basis words reach length 6
    CHECK_THROWS_AS(FiniteDimAlgebra::build(p, low_cap), CapError);
}

TEST_CASE("parallel build matches the serial one") {
    TriangulationQuiver tq = tetrahedral_quiver();
    WeightData w = uniform_weights(tq, 2, Scalar{1, 1});
    Presentation p = weighted_presentation(tq, gf(7), w);
    AlgebraOptions serial, parallel;
    serial.jobs = 1;
    parallel.jobs = 4;
    FiniteDimAlgebra a = FiniteDimAlgebra::build(p, serial);
    FiniteDimAlgebra b = FiniteDimAlgebra::build(p, parallel);
    REQUIRE(a.dimension() == b.dimension());
    for (int i = 0; i < a.dimension(); ++i)
        CHECK(a.basis_word_string(i) == b.basis_word_string(i));
    CHECK(a.cartan_matrix() == b.cartan_matrix());
    CHECK(a.radical_layer_dims() == b.radical_layer_dims());
}

TEST_CASE("path algebra of a single arrow, as a control") {
    FiniteDimAlgebra A = FiniteDimAlgebra::build(a2_presentation());
    CHECK(A.dimension() == 3);
    CHECK(A.vertex_dim(0) == 2);
    CHECK(A.vertex_dim(1) == 1);
    CHECK(A.nilpotency_index() == 2);
    CHECK_FALSE(A.has_triangulation());
    auto C = A.cartan_matrix();
    CHECK(C[0] == std::vector<long long>{1, 1});
    CHECK(C[1] == std::vector<long long>{0, 1});
    CHECK(A.cartan_determinant() == 1);
    // triangular Cartan matrix: no chance of a symmetric structure
    SymmetricFormReport sym = symmetric_form(A);
    CHECK_FALSE(sym.witness_found);
    CHECK(sym.refuted);
}

TEST_CASE("symmetric structure witnesses") {
    for (const auto& family : family_names()) {
        TriangulationQuiver tq = named_quiver(family);
        Field F{gf(5)};
        WeightData w = family == "torus-crosscap"
                           ? torus_crosscap_weights(tq, 3, 2, 1, 1, F.one(), F.one(), F.one(), F.one())
                           : uniform_weights(tq, 1, F.from_long(2));
        FiniteDimAlgebra A = FiniteDimAlgebra::build(weighted_presentation(tq, gf(5), w));
        SymmetricFormReport sym = symmetric_form(A);
        CAPTURE(family);
        CHECK(sym.witness_found);
        CHECK_FALSE(sym.refuted);
        CHECK(int(sym.form.size()) == A.dimension());
        // the witness really vanishes on commutators: phi(xy) == phi(yx)
        uint64_t s = 7;
        for (int round = 0; round < 20; ++round) {
            Vec x = random_element(A, s), y = random_element(A, s);
            Vec xy = A.multiply(x, y), yx = A.multiply(y, x);
            Scalar lhs = F.zero(), rhs = F.zero();
            for (size_t i = 0; i < xy.size(); ++i) {
                lhs = F.add(lhs, F.mul(sym.form[i], xy[i]));
                rhs = F.add(rhs, F.mul(sym.form[i], yx[i]));
            }
            CHECK(lhs == rhs);
        }
    }
}
