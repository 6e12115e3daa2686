#include <catch2/catch_amalgamated.hpp>

#include "crosscap/classify.hpp"

using namespace crosscap;

namespace {
const SurfaceComplex& N3() {
    static auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    return X;
}
}  // namespace

TEST_CASE("classify the crosscap core") {
    auto k = classify(embed_word(N3(), "a1"));
    CHECK(k.one_sided);
    CHECK_FALSE(k.separating);
    CHECK(k.essential);
    CHECK(k.surviving);
    CHECK_FALSE(k.mobius_bounding);
}

TEST_CASE("classify the Mobius band boundary") {
    auto k = classify(embed_word(N3(), "a1 a1"));
    CHECK_FALSE(k.one_sided);
    CHECK(k.separating);
    CHECK(k.mobius_bounding);
    CHECK_FALSE(k.essential);
    CHECK_FALSE(k.surviving);
}

TEST_CASE("classify a curve around a marked point") {
    auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 1);
    // a small interior loop around the puncture at (125, 0)
    Pass p;
    p.poly = 0;
    p.pts = {Pt(100, -30), Pt(160, -30), Pt(160, 30), Pt(100, 30)};
    CurveEmbedding loop(X, {p}, true);
    loop.validate();
    auto k = classify(loop);
    CHECK(k.puncture_peripheral);
    CHECK_FALSE(k.essential);
    CHECK(k.separating);
    CHECK_FALSE(k.surviving);
    // the same loop with no marked point inside bounds a disk
    Pass q;
    q.poly = 0;
    q.pts = {Pt(-300, -430), Pt(-240, -430), Pt(-240, -370), Pt(-300, -370)};
    CurveEmbedding triv(X, {q}, true);
    auto kt = classify(triv);
    CHECK_FALSE(kt.essential);
    CHECK_FALSE(kt.puncture_peripheral);
}

TEST_CASE("intersection numbers of cores") {
    auto a1 = embed_word(N3(), "a1");
    auto a2 = embed_word(N3(), "a2");
    CHECK(intersection_number(a1, a2) == 0);
    auto b = embed_word(N3(), "a1 a1");
    CHECK(intersection_number(a1, b) == 0);
    // one-sided class self-intersection is 1
    CHECK(intersection_number(a1, a1) == 1);
    auto copy = embed_word_shifted(N3(), parse_word("a1"), Rat(1, 5));
    CHECK(intersection_number(a1, copy) == 1);
}

TEST_CASE("minimal position removes both bigons of isotopic copies") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    Overlay before = Overlay::of_curves(N3(), {&a, &b});
    REQUIRE(before.crossings(0, 1) == 2);
    auto r = minimal_position(a, b);
    CHECK(r.crossings == 0);
    CHECK(r.removals >= 1);
}

TEST_CASE("marked points block bigons") {
    auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    auto a = embed_word(X, "a1 a2");
    auto b = embed_word_shifted(X, parse_word("a1 a2"), Rat(1, 37));
    Overlay ov = Overlay::of_curves(X, {&a, &b});
    auto bgs = ov.bigons(0, 1);
    REQUIRE(bgs.size() == 2);
    // One marked bigon: the other stays removable, and removing it drops both
    // crossings (the two bigons share their corners).
    MarkedSet P1 = {ov.interior_point(bgs[0].region)};
    CHECK(minimal_position(a, b, P1).crossings == 0);
    // Both bigons marked: the pair is pinned at two crossings.
    MarkedSet P2 = {ov.interior_point(bgs[0].region), ov.interior_point(bgs[1].region)};
    auto r = minimal_position(a, b, P2);
    CHECK(r.crossings == 2);
    CHECK(r.removals == 0);
}

TEST_CASE("minimal position requires transverse input") {
    auto a = embed_word(N3(), "a1 a2");
    CHECK_THROWS_AS(minimal_position(a, a), TopologyError);
}

TEST_CASE("same_class on parallel copies and distinct classes") {
    auto a = embed_word(N3(), "a1 a2");
    auto p = push_off(a);
    CHECK(same_class(a, p));
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    CHECK(same_class(a, b));
    CHECK_FALSE(same_class(embed_word(N3(), "a1"), embed_word(N3(), "a2")));
    // one-sided pair via neighborhood boundaries
    auto c1 = embed_word(N3(), "a1");
    auto c1s = embed_word_shifted(N3(), parse_word("a1"), Rat(1, 7));
    CHECK(same_class(c1, c1s));
    CHECK_FALSE(same_class(c1, a));  // mixed sidedness
}

TEST_CASE("same_class rel marked points distinguishes sides") {
    auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    auto a = embed_word(X, "a1 a2");
    auto b = embed_word_shifted(X, parse_word("a1 a2"), Rat(1, 37));
    Overlay ov = Overlay::of_curves(X, {&a, &b});
    auto bgs = ov.bigons(0, 1);
    REQUIRE(bgs.size() == 2);
    MarkedSet P = {ov.interior_point(bgs[0].region), ov.interior_point(bgs[1].region)};
    CHECK(same_class(a, b));           // isotopic on the closed surface
    CHECK_FALSE(same_class(a, b, P));  // the marked bigons obstruct rel P
}

TEST_CASE("mobius core inverts neighborhood boundary") {
    auto c = embed_word(N3(), "a1");
    auto bd = neighborhood_boundary(c);
    auto core = mobius_core(bd);
    CHECK(same_class(core, c));
    auto c2 = embed_word(N3(), "a1 a2 a3");
    REQUIRE(c2.one_sided());
    auto bd2 = neighborhood_boundary(c2);
    auto core2 = mobius_core(bd2);
    CHECK(same_class(core2, c2));
    CHECK_THROWS_AS(mobius_core(embed_word(N3(), "a1 a2")), TopologyError);
    CHECK_THROWS_AS(neighborhood_boundary(embed_word(N3(), "a1 a2")), TopologyError);
}

TEST_CASE("filling certificates") {
    auto a1 = embed_word(N3(), "a1");
    CHECK_FALSE(is_filling({a1}).filling);
    auto a2 = embed_word(N3(), "a2");
    auto a3 = embed_word(N3(), "a3");
    auto rep = is_filling({a1, a2, a3});
    CHECK_FALSE(rep.filling);  // complement is a planar pair of pants, not disks
    CHECK(rep.non_disk_regions == 1);
}

TEST_CASE("primitivity and homotopy certificates") {
    CHECK_FALSE(is_primitive(classify(embed_word(N3(), "a1 a1"))));
    CHECK(is_primitive(classify(embed_word(N3(), "a1 a2"))));
    auto a = embed_word(N3(), "a1 a2");
    auto p = push_off(a);
    CHECK_FALSE(pairwise_nonhomotopic({a, p}));
    CHECK(pairwise_nonhomotopic({embed_word(N3(), "a1"), embed_word(N3(), "a2")}));
}

TEST_CASE("perturb_transverse resolves identical copies") {
    auto a = embed_word(N3(), "a1 a2");
    auto out = perturb_transverse({a, a});
    REQUIRE(out.size() == 2);
    Overlay ov = Overlay::of_curves(N3(), {&out[0], &out[1]});
    CHECK(ov.crossings(0, 1) == 0);
    CHECK_THROWS_AS(perturb_transverse({embed_word(N3(), "a1")}), TopologyError);
}

TEST_CASE("choose_bigon_points hits every bigon exactly once") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    auto P = choose_bigon_points({a, b});
    CHECK(P.size() == 2);
    auto r = minimal_position(a, b, P);
    CHECK(r.crossings == 2);  // both bigons blocked: already minimal rel P
    CHECK(r.removals == 0);
    // disjoint curves need no points
    auto c1 = embed_word(N3(), "a1");
    auto c2 = embed_word(N3(), "a2");
    CHECK(choose_bigon_points({c1, c2}).empty());
}

TEST_CASE("bigon removal confluence under randomized orders") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    for (unsigned long seed = 1; seed <= 20; ++seed) {
        MinPosOptions opt;
        opt.seed = seed;
        auto r = minimal_position(a, b, {}, opt);
        CHECK(r.crossings == 0);
    }
}

TEST_CASE("augment_minimal_position") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    auto out = augment_minimal_position({a}, {b});
    REQUIRE(out.size() == 1);
    Overlay ov = Overlay::of_curves(N3(), {&a, &out[0]});
    CHECK(ov.crossings(0, 1) == 0);
}
