#include <catch2/catch_amalgamated.hpp>

#include "crosscap/embed.hpp"
#include "crosscap/offsets.hpp"

using namespace crosscap;

namespace {
const SurfaceComplex& N3() {
    static auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    return X;
}
}  // namespace

TEST_CASE("embed crosscap core") {
    auto c = embed_word(N3(), "a1");
    CHECK(c.n_passes() == 1);
    CHECK(word_str(c.crossing_word()) == "a1");
    CHECK(c.one_sided());
    CHECK(c.parity_vector() == std::vector<int>{1, 0, 0});
}

TEST_CASE("embed two-chord curve") {
    auto c = embed_word(N3(), "a1 a2");
    CHECK(c.n_passes() == 2);
    CHECK(word_str(c.canonical_word()) == "a1 a2");
    CHECK_FALSE(c.one_sided());
}

TEST_CASE("embed rejects cancelling and empty words") {
    CHECK_THROWS_AS(embed_word(N3(), "a1 a1-"), TopologyError);
    CHECK_THROWS_AS(embed_word(N3(), ""), TopologyError);
    try {
        embed_word(N3(), "a1 a1-");
        FAIL("expected throw");
    } catch (const TopologyError& e) {
        CHECK(e.kind == TopologyError::Kind::NotReduced);
    }
}

TEST_CASE("embed detects non-simple words") {
    try {
        embed_word(N3(), "a1 a1 a1");
        FAIL("expected throw");
    } catch (const TopologyError& e) {
        CHECK(e.kind == TopologyError::Kind::NotSimple);
    }
}

TEST_CASE("crossing word equals input up to rotation") {
    for (const char* w : {"a1", "a1 a2", "a1 a1", "a1 a2 a3", "a2 a3", "a1 a2 a1- a3"}) {
        Word in = parse_word(w);
        CurveEmbedding c;
        try {
            c = embed_word(N3(), in);
        } catch (const TopologyError&) {
            continue;  // non-simple words are allowed to fail
        }
        CHECK(canonical_cyclic(c.crossing_word()) == canonical_cyclic(in));
    }
}

TEST_CASE("global polyline round trip") {
    auto c = embed_word(N3(), "a1 a2 a3");
    auto back = curve_from_global(N3(), global_polyline(c));
    back.validate();
    CHECK(back.same_point_set(c));
}

TEST_CASE("push-off of a two-sided curve is disjoint") {
    auto c = embed_word(N3(), "a1 a2");
    auto p = push_off(c);
    p.validate();
    CHECK(word_str(p.canonical_word()) == "a1 a2");
    Overlay ov = Overlay::of_curves(N3(), {&c, &p});
    CHECK(ov.crossings(0, 1) == 0);
}

TEST_CASE("push-off of a one-sided curve fails, boundary doubling works") {
    auto c = embed_word(N3(), "a1");
    CHECK_THROWS_AS(push_off(c), TopologyError);
    auto b = mobius_boundary(c);
    b.validate();
    CHECK(word_str(b.canonical_word()) == "a1 a1");
    CHECK_FALSE(b.one_sided());
    Overlay ov = Overlay::of_curves(N3(), {&c, &b});
    CHECK(ov.crossings(0, 1) == 0);
}

TEST_CASE("transverse copy of a one-sided curve crosses once") {
    auto c = embed_word(N3(), "a1");
    auto t = transverse_copy(c);
    t.validate();
    Overlay ov = Overlay::of_curves(N3(), {&c, &t});
    CHECK(ov.crossings(0, 1) == 1);
}

TEST_CASE("mobius boundary of a longer one-sided curve") {
    auto c = embed_word(N3(), "a1 a2 a3");
    REQUIRE(c.one_sided());
    auto b = mobius_boundary(c);
    CHECK(word_str(b.canonical_word()) == "a1 a2 a3 a1 a2 a3");
    Overlay ov = Overlay::of_curves(N3(), {&c, &b});
    CHECK(ov.crossings(0, 1) == 0);
}
