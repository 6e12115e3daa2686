#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "crosscap/surface.hpp"

using namespace crosscap;

TEST_CASE("standard nonorientable schemes") {
    auto N3 = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    CHECK(N3.side_word_str() == "a1 a1 a2 a2 a3 a3");
    CHECK(N3.polygons[0].size() == 6);
    CHECK(N3.vertex_classes() == 1);
    CHECK(N3.complex_chi() == -1);
    CHECK_FALSE(N3.orientable());
    CHECK(N3.derived_genus() == 3);

    auto N32 = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 2);
    CHECK(N32.punctures.size() == 2);
    CHECK(N32.punctures[0].p != N32.punctures[1].p);
    CHECK(N32.euler_characteristic() == -3);
}

TEST_CASE("standard orientable schemes") {
    auto S2 = SurfaceComplex::build(SurfaceKind::Orientable, 2, 0);
    CHECK(S2.side_word_str() == "a1 a2 a1- a2- a3 a4 a3- a4-");
    CHECK(S2.polygons[0].size() == 8);
    CHECK(S2.vertex_classes() == 1);
    CHECK(S2.complex_chi() == -2);
    CHECK(S2.orientable());
    CHECK(S2.derived_genus() == 2);
}

TEST_CASE("build rejects genus 0") {
    CHECK_THROWS_AS(SurfaceComplex::build(SurfaceKind::Nonorientable, 0, 0), TopologyError);
    CHECK_THROWS_AS(SurfaceComplex::build(SurfaceKind::Orientable, 0, 1), TopologyError);
}

TEST_CASE("euler characteristic over the grid by cell count") {
    for (int g = 1; g <= 6; ++g) {
        for (int n = 0; n <= 4; ++n) {
            auto N = SurfaceComplex::build(SurfaceKind::Nonorientable, g, n);
            CHECK(N.euler_characteristic() == 2 - g - n);
            CHECK(N.vertex_classes() == 1);
            auto S = SurfaceComplex::build(SurfaceKind::Orientable, g, n);
            CHECK(S.euler_characteristic() == 2 - 2 * g - n);
            CHECK(S.vertex_classes() == 1);
        }
    }
}

TEST_CASE("two-sided complexity formulas") {
    auto inv3 = invariants(SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0));
    CHECK(inv3.euler_characteristic == -1);
    CHECK(inv3.xi_two == 1);
    auto inv4 = invariants(SurfaceComplex::build(SurfaceKind::Nonorientable, 4, 0));
    CHECK(inv4.xi_two == 3);
    auto inv14 = invariants(SurfaceComplex::build(SurfaceKind::Nonorientable, 1, 4));
    CHECK(inv14.xi_two == 2);
    CHECK_THROWS_AS(xi_two(SurfaceComplex::build(SurfaceKind::Orientable, 2, 0)), TopologyError);
}

TEST_CASE("orientation character") {
    auto N3 = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    CHECK(N3.orientation_character(parse_word("a1")) == 1);
    CHECK(N3.orientation_character(parse_word("a1 a1")) == 0);
    CHECK(N3.orientation_character(parse_word("a1 a2 a3")) == 1);
    CHECK_THROWS_AS(N3.orientation_character(parse_word("a9")), TopologyError);

    auto S2 = SurfaceComplex::build(SurfaceKind::Orientable, 2, 0);
    CHECK(S2.orientation_character(parse_word("a1 a2 a3 a4")) == 0);
}

TEST_CASE("orientation character is a Z/2 homomorphism") {
    auto N4 = SurfaceComplex::build(SurfaceKind::Nonorientable, 4, 0);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Word u, v;
        for (int i = 0; i < static_cast<int>(rng() % 6); ++i)
            u.push_back({static_cast<int>(rng() % 4), rng() % 2 ? 1 : -1});
        for (int i = 0; i < static_cast<int>(rng() % 6); ++i)
            v.push_back({static_cast<int>(rng() % 4), rng() % 2 ? 1 : -1});
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        CHECK(N4.orientation_character(uv) ==
              (N4.orientation_character(u) ^ N4.orientation_character(v)));
    }
}

TEST_CASE("builders are deterministic") {
    auto a = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 2);
    auto b = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 2);
    CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("pairing matrix") {
    auto N3 = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(N3.pairing_matrix()[i][j] == (i == j ? 1 : 0));
    auto S1 = SurfaceComplex::build(SurfaceKind::Orientable, 1, 0);
    CHECK(S1.pairing_matrix()[0][1] == 1);
    CHECK(S1.pairing_matrix()[0][0] == 0);
}

TEST_CASE("digon N1 is invariants-only") {
    auto N1 = SurfaceComplex::build(SurfaceKind::Nonorientable, 1, 0);
    CHECK(N1.complex_chi() == 1);
    CHECK_FALSE(N1.orientable());
    CHECK_FALSE(N1.geometric());
    CHECK(xi_two(N1) == -2);
}

TEST_CASE("word canonicalization") {
    Word w = parse_word("a2 a1 a3-");
    Word c = canonical_cyclic(w);
    CHECK(word_str(c) == "a1 a3- a2");  // minimal rotation; inverse is a3 a1- a2- etc.
    CHECK(canonical_cyclic(word_inverse(w)) == c);
    CHECK(cyclic_reduce(parse_word("a1 a1-")).empty());
    CHECK(cyclic_reduce(parse_word("a2 a1 a1- a2")).size() == 2);
    CHECK(cyclic_proper_power(parse_word("a1 a2 a1 a2")));
    CHECK_FALSE(cyclic_proper_power(parse_word("a1 a2")));
    auto root = cyclic_square_root(parse_word("a1 a2 a1 a2"));
    REQUIRE(root.has_value());
    CHECK(word_str(*root) == "a1 a2");
}
