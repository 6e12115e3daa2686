#include <catch2/catch_amalgamated.hpp>

#include "crosscap/graphs.hpp"

using namespace crosscap;

namespace {
const SurfaceComplex& N3() {
    static auto X = SurfaceComplex::build(SurfaceKind::Nonorientable, 3, 0);
    return X;
}
}  // namespace

TEST_CASE("nonseparating ball around the crosscap core") {
    BallOptions opts;
    opts.radius = 2;
    opts.word_bound = 2;
    auto ball = enumerate_ball(N3(), variant_NC(), embed_word(N3(), "a1"), opts);
    const int a2 = ball.find_class(embed_word(N3(), "a2"));
    const int a3 = ball.find_class(embed_word(N3(), "a3"));
    REQUIRE(a2 >= 0);
    REQUIRE(a3 >= 0);
    CHECK(ball.dist[ball.base][a2] == 1);
    CHECK(ball.dist[ball.base][a3] == 1);
    CHECK(ball.dist[ball.base][ball.base] == 0);
    // every NC vertex is surviving
    for (const auto& v : ball.verts) CHECK(v.cls.surviving);
}

TEST_CASE("extended ball: Mobius boundary adjacent to its core") {
    BallOptions opts;
    opts.radius = 2;
    opts.word_bound = 2;
    auto ball = enumerate_ball(N3(), variant_Cpm(), embed_word(N3(), "a1"), opts);
    const int bd = ball.find_class(embed_word(N3(), "a1 a1"));
    REQUIRE(bd >= 0);
    CHECK(ball.dist[ball.base][bd] == 1);
}

TEST_CASE("base failing the predicate is rejected") {
    BallOptions opts;
    CHECK_THROWS_AS(enumerate_ball(N3(), variant_NC(), embed_word(N3(), "a1 a1"), opts),
                    TopologyError);
}

TEST_CASE("edge soundness at small word bound") {
    BallOptions opts;
    opts.radius = 3;
    opts.word_bound = 3;
    auto ball = enumerate_ball(N3(), variant_Cs(), embed_word(N3(), "a1"), opts);
    for (int u = 0; u < ball.size(); ++u)
        for (int v = u + 1; v < ball.size(); ++v) {
            const int i = intersection_number(ball.verts[u].emb, ball.verts[v].emb);
            if (ball.edge(u, v))
                CHECK(i == 0);
            else
                CHECK(i > 0);
        }
    // triangle inequality on the distance table
    for (int u = 0; u < ball.size(); ++u)
        for (int v = 0; v < ball.size(); ++v)
            for (int w = 0; w < ball.size(); ++w) {
                if (ball.dist[u][v] < 0 || ball.dist[v][w] < 0 || ball.dist[u][w] < 0) continue;
                CHECK(ball.dist[u][w] <= ball.dist[u][v] + ball.dist[v][w]);
            }
}

TEST_CASE("connectivity of small surviving balls") {
    BallOptions opts;
    opts.radius = 8;
    opts.word_bound = 3;
    for (auto var : {variant_Cs(), variant_Cpms(), variant_Cpms_two()}) {
        CurveEmbedding base = var.two_sided_only ? embed_word(N3(), "a1 a2")
                                                 : embed_word(N3(), "a1");
        auto ball = enumerate_ball(N3(), var, base, opts);
        INFO(var.name());
        CHECK(ball.connected());
    }
}

TEST_CASE("certification agrees at small scale") {
    BallOptions opts;
    opts.radius = 3;
    opts.word_bound = 2;
    auto cb = CertifiedBall::build(N3(), variant_NC(), embed_word(N3(), "a1"), opts);
    const int a2 = cb.lo.find_class(embed_word(N3(), "a2"));
    REQUIRE(a2 >= 0);
    CHECK(cb.certified(cb.lo.base, a2));
    CHECK(cb.distance(cb.lo.base, a2) == 1);
    // monotonicity: distances never grow with the word bound
    for (int u = 0; u < cb.lo.size(); ++u)
        for (int v = 0; v < cb.lo.size(); ++v) {
            if (cb.lo.dist[u][v] < 0) continue;
            const int dh = cb.hi.dist[cb.match[u]][cb.match[v]];
            REQUIRE(dh >= 0);
            CHECK(dh <= cb.lo.dist[u][v]);
        }
}

TEST_CASE("geodesics enumeration") {
    BallOptions opts;
    opts.radius = 3;
    opts.word_bound = 2;
    auto ball = enumerate_ball(N3(), variant_NC(), embed_word(N3(), "a1"), opts);
    const int a2 = ball.find_class(embed_word(N3(), "a2"));
    auto gs = geodesics(ball, ball.base, a2);
    REQUIRE_FALSE(gs.empty());
    for (const auto& g : gs) {
        CHECK(g.front() == ball.base);
        CHECK(g.back() == a2);
        CHECK(static_cast<int>(g.size()) == ball.dist[ball.base][a2] + 1);
    }
    CHECK_THROWS_AS(geodesics(ball, ball.base, ball.size() + 5), TopologyError);
}

TEST_CASE("fine distance trivial cases") {
    auto a = embed_word(N3(), "a1 a2");
    auto rep0 = fine_distance(a, a, FineVariant::PmTwoDagger, 4);
    CHECK(rep0.distance == 0);
    CHECK(rep0.certified);
    auto c3 = embed_word(N3(), "a3");
    // disjoint, non-isotopic: an edge of the fine graph
    auto bd3 = neighborhood_boundary(c3);
    auto rep1 = fine_distance(a, bd3, FineVariant::PmTwoDagger, 4);
    CHECK(rep1.distance == 1);
    CHECK(rep1.certified);
}

TEST_CASE("fine distance of transverse isotopic copies is 2") {
    auto a = embed_word(N3(), "a1 a2");
    auto b = embed_word_shifted(N3(), parse_word("a1 a2"), Rat(1, 37));
    auto rep = fine_distance(a, b, FineVariant::PmTwoDagger, 3);
    CHECK(rep.n_bigon_points == 2);
    CHECK(rep.distance == 2);
    CHECK(rep.certified);
}

TEST_CASE("fine distance routes one-sided inputs through boundaries") {
    auto c = embed_word(N3(), "a1");
    auto d = embed_word(N3(), "a3");
    auto rep = fine_distance(c, d, FineVariant::PmTwoDagger, 4);
    // boundaries of disjoint cores are disjoint
    CHECK(rep.distance == 1);
}

TEST_CASE("fine graphs rejected on orientable or low genus") {
    auto S2 = SurfaceComplex::build(SurfaceKind::Orientable, 2, 0);
    auto u = embed_word(S2, "a1");
    auto v = embed_word(S2, "a2");
    CHECK_THROWS_AS(fine_distance(u, v, FineVariant::Dagger, 3), TopologyError);
}

TEST_CASE("quasi-isometry checks for f2 and f3 at small scale") {
    BallOptions opts;
    opts.radius = 3;
    opts.word_bound = 2;
    auto base_two = embed_word(N3(), "a1 a2");
    auto base_any = embed_word(N3(), "a1");

    // f2: C^s -> C^{±s}
    auto sub2 = CertifiedBall::build(N3(), variant_Cs(), base_any, opts);
    auto super2 = CertifiedBall::build(N3(), variant_Cpms(), base_any, opts);
    auto rep2 = verify_quasi_isometry(sub2, super2, QIMap::f2);
    INFO(rep2.to_json().dump(2));
    CHECK(rep2.isometry_violations == 0);
    CHECK(rep2.density_checked == rep2.density_witnessed);
    CHECK(rep2.density_checked > 0);  // Mobius boundaries exist at L=2

    // f3: C^{±s}_two -> C^{±s}
    auto sub3 = CertifiedBall::build(N3(), variant_Cpms_two(), base_two, opts);
    auto super3 = CertifiedBall::build(N3(), variant_Cpms(), base_two, opts);
    auto rep3 = verify_quasi_isometry(sub3, super3, QIMap::f3);
    INFO(rep3.to_json().dump(2));
    CHECK(rep3.isometry_violations == 0);
    CHECK(rep3.density_checked == rep3.density_witnessed);
}
