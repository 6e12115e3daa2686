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

TEST_CASE("empty overlay is the whole surface") {
    Overlay ov = Overlay::of_curves(N3(), {});
    REQUIRE(ov.regions.size() == 1);
    CHECK(ov.regions[0].chi == -1);
    CHECK_FALSE(ov.regions[0].orientable);
    CHECK(ov.regions[0].circles.empty());
}

TEST_CASE("complement of the crosscap core") {
    auto c = embed_word(N3(), "a1");
    Overlay ov = Overlay::of_curves(N3(), {&c});
    REQUIRE(ov.regions.size() == 1);
    CHECK(ov.regions[0].chi == -1);
    CHECK_FALSE(ov.regions[0].orientable);
    REQUIRE(ov.regions[0].circles.size() == 1);
    // the single boundary circle double-covers the one-sided core
    CHECK(ov.regions[0].circles[0].corners == 0);
}

TEST_CASE("complement of the Mobius band boundary") {
    auto b = embed_word(N3(), "a1 a1");
    Overlay ov = Overlay::of_curves(N3(), {&b});
    REQUIRE(ov.regions.size() == 2);
    int mobius = -1, rest = -1;
    for (int r = 0; r < 2; ++r) {
        if (ov.regions[r].chi == 0) mobius = r;
        if (ov.regions[r].chi == -1) rest = r;
    }
    REQUIRE(mobius >= 0);
    REQUIRE(rest >= 0);
    CHECK_FALSE(ov.regions[mobius].orientable);
    CHECK(ov.regions[mobius].circles.size() == 1);
    CHECK_FALSE(ov.regions[rest].orientable);
    CHECK(ov.regions[rest].circles.size() == 1);
}

TEST_CASE("complement of the three crosscap cores is a pair of pants") {
    auto c1 = embed_word(N3(), "a1");
    auto c2 = embed_word(N3(), "a2");
    auto c3 = embed_word(N3(), "a3");
    Overlay ov = Overlay::of_curves(N3(), {&c1, &c2, &c3});
    CHECK(ov.crossings(0, 1) == 0);
    CHECK(ov.crossings(0, 2) == 0);
    CHECK(ov.crossings(1, 2) == 0);
    REQUIRE(ov.regions.size() == 1);
    CHECK(ov.regions[0].chi == -1);
    CHECK(ov.regions[0].orientable);
    CHECK(ov.regions[0].circles.size() == 3);
}

TEST_CASE("transverse isotopic copies cross twice with two empty bigons") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    Overlay ov = Overlay::of_curves(N3(), {&a, &b});
    CHECK(ov.crossings(0, 1) == 2);
    auto bg = ov.bigons(0, 1);
    CHECK(bg.size() == 2);
    for (const auto& g : bg) CHECK(g.empty);
}

TEST_CASE("interior point is certified") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    Overlay ov = Overlay::of_curves(N3(), {&a, &b});
    for (int r = 0; r < static_cast<int>(ov.regions.size()); ++r) {
        auto mp = ov.interior_point(r);
        CHECK(ov.region_of_point(mp.poly, mp.p) == r);
    }
}

TEST_CASE("marked points land in regions") {
    auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 1);
    auto c = embed_word(X, "a1");
    Overlay ov = Overlay::of_curves(X, {&c});
    int total_marks = 0;
    for (const auto& R : ov.regions) total_marks += static_cast<int>(R.marks.size());
    CHECK(total_marks == 1);
}

TEST_CASE("region core of the annulus between parallel copies") {
    auto a = embed_word(N3(), "a1 a2");
    auto p = push_off(a);
    Overlay ov = Overlay::of_curves(N3(), {&a, &p});
    // find the annulus region between them
    int annulus = -1;
    for (int r = 0; r < static_cast<int>(ov.regions.size()); ++r) {
        const auto& R = ov.regions[r];
        if (R.chi == 0 && R.orientable && R.circles.size() == 2) annulus = r;
    }
    REQUIRE(annulus >= 0);
    auto core = region_core(ov, annulus, 0);
    core.validate();
    CHECK(word_str(core.canonical_word()) == "a1 a2");
    Overlay check = Overlay::of_curves(N3(), {&a, &p, &core});
    CHECK(check.crossings(0, 2) == 0);
    CHECK(check.crossings(1, 2) == 0);
}
