#pragma once

// Finite balls of the curve-graph family: vertex enumeration by canonical
// crossing words (plus caller-supplied seed curves), edges by vanishing
// geometric intersection number, distances by BFS.  Balls are lower-bound
// truncations of the infinite graphs; a distance is *certified* when the
// word bounds L and L+2 agree on it.  Fine-graph distances are computed
// through the marked-point reduction, never by direct vertex enumeration.

#include "crosscap/classify.hpp"

#include <map>
#include <queue>
#include <string>
#include <vector>

namespace crosscap {

struct GraphVariant {
    bool extended_pm = false;        // admit Möbius-bounding curves as extra vertices
    bool two_sided_only = false;
    bool surviving_only = false;
    bool nonseparating_only = false;

    bool admits(const CurveClass& k) const {
        if (two_sided_only && k.one_sided) return false;
        if (nonseparating_only) return k.essential && !k.separating;
        bool base = k.essential && (!surviving_only || k.surviving);
        if (extended_pm && k.mobius_bounding) base = true;
        return base;
    }

    // sub-variant relation: every curve this variant admits, v admits too
    bool subvariant_of(const GraphVariant& v) const {
        // conservative syntactic check matching the paper's inclusions
        if (v.two_sided_only && !two_sided_only) return false;
        if (v.nonseparating_only && !nonseparating_only) return false;
        if (v.surviving_only && !(surviving_only || nonseparating_only)) return false;
        if (!v.extended_pm && extended_pm) return false;
        return true;
    }

    std::string name() const {
        std::string s = "C";
        if (nonseparating_only) s = "NC";
        if (extended_pm) s += "+-";
        if (surviving_only) s += "s";
        if (two_sided_only) s += "_two";
        return s;
    }
};

inline GraphVariant variant_C() { return {}; }
inline GraphVariant variant_NC() { return {false, false, false, true}; }
inline GraphVariant variant_Cs() { return {false, false, true, false}; }
inline GraphVariant variant_Cpm() { return {true, false, false, false}; }
inline GraphVariant variant_Cpms() { return {true, false, true, false}; }
inline GraphVariant variant_Cpms_two() { return {true, true, true, false}; }
inline GraphVariant variant_C_two() { return {false, true, false, false}; }

inline GraphVariant parse_variant(const std::string& s) {
    if (s == "c") return variant_C();
    if (s == "nc") return variant_NC();
    if (s == "cs") return variant_Cs();
    if (s == "cpm") return variant_Cpm();
    if (s == "cpms") return variant_Cpms();
    if (s == "cpms-two") return variant_Cpms_two();
    if (s == "c-two") return variant_C_two();
    throw err(TopologyError::Kind::InvalidInput, "unknown graph variant: " + s);
}

struct BallVertex {
    CurveEmbedding emb;
    CurveClass cls;
    bool seed = false;
};

class CurveGraphBall {
  public:
    const SurfaceComplex* X = nullptr;
    GraphVariant variant;
    MarkedSet marks;
    int base = 0;
    int radius = 0;
    int word_bound = 0;
    std::vector<BallVertex> verts;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<int>> dist;  // all-pairs BFS; -1 unreachable

    int size() const { return static_cast<int>(verts.size()); }
    bool in_ball(int v) const { return dist[base][v] >= 0 && dist[base][v] <= radius; }
    bool edge(int u, int v) const {
        for (int w : adj[u])
            if (w == v) return true;
        return false;
    }

    int find_class(const CurveEmbedding& c) const {
        for (int v = 0; v < size(); ++v)
            if (same_class(verts[v].emb, c, marks)) return v;
        return -1;
    }

    bool connected() const {
        if (verts.empty()) return true;
        for (int v = 0; v < size(); ++v)
            if (dist[0][v] < 0) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["variant"] = variant.name();
        j["word_bound"] = word_bound;
        j["radius"] = radius;
        j["base"] = base;
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& v : verts) {
            nlohmann::json vj = v.cls.to_json();
            vj["seed"] = v.seed;
            vs.push_back(vj);
        }
        j["vertices"] = vs;
        nlohmann::json edges = nlohmann::json::array();
        for (int u = 0; u < size(); ++u)
            for (int v : adj[u])
                if (u < v) edges.push_back({u, v});
        j["edges"] = edges;
        nlohmann::json dd = nlohmann::json::array();
        for (int v = 0; v < size(); ++v) dd.push_back(dist[base][v]);
        j["distance_from_base"] = dd;
        return j;
    }

    // Plain-text edge list plus a vertex legend.
    std::string edge_list_text() const {
        std::string s;
        for (int u = 0; u < size(); ++u)
            for (int v : adj[u])
                if (u < v) s += std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }
    std::string legend_text() const {
        std::string s;
        for (int v = 0; v < size(); ++v)
            s += std::to_string(v) + " " + word_str(verts[v].cls.canonical_word) +
                 (verts[v].seed ? " (seed)" : "") + "\n";
        return s;
    }
};

namespace detail {

// Canonical cyclic words of length 1..L, lexicographic order.
inline std::vector<Word> canonical_words(int n_labels, int L) {
    std::vector<Word> out;
    Word w;
    std::function<void()> gen = [&]() {
        if (!w.empty() && cyclically_reduced(w) && canonical_cyclic(w) == w) out.push_back(w);
        if (static_cast<int>(w.size()) >= L) return;
        for (int l = 0; l < n_labels; ++l)
            for (int s : {+1, -1}) {
                w.push_back({l, s});
                // canonical words never lex-exceed their rotations; prune a
                // cheap necessary condition: first letter minimal
                if (w.size() == 1 || !(w.back() < w.front())) gen();
                w.pop_back();
            }
    };
    gen();
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

struct VertexKey {
    std::vector<int> flags;
    bool operator<(const VertexKey& o) const { return flags < o.flags; }
};

inline VertexKey vertex_key(const SurfaceComplex& X, const CurveClass& k,
                            const CurveEmbedding& emb,
                            const std::vector<CurveEmbedding>& probes,
                            const MarkedSet& marks) {
    VertexKey key;
    key.flags = {k.one_sided, k.separating, k.essential, k.mobius_bounding, k.surviving,
                 k.puncture_peripheral};
    if (X.homology_usable())
        for (int h : k.homology) key.flags.push_back(h);
    for (const auto& p : probes) key.flags.push_back(intersection_number(emb, p, marks));
    return key;
}

}  // namespace detail

struct BallOptions {
    int radius = 3;
    int word_bound = 4;
    std::vector<CurveEmbedding> seeds;
};

inline CurveGraphBall enumerate_ball(const SurfaceComplex& X, const GraphVariant& variant,
                                     const CurveEmbedding& base, const BallOptions& opts,
                                     const MarkedSet& extra_marks = {}) {
    X.require_geometric();
    CurveGraphBall ball;
    ball.X = &X;
    ball.variant = variant;
    ball.marks = extra_marks;
    ball.radius = opts.radius;
    ball.word_bound = opts.word_bound;

    const CurveClass base_cls = classify(base, extra_marks);
    if (!variant.admits(base_cls))
        throw err(TopologyError::Kind::NotInBall,
                  "base curve fails the variant's vertex predicate");

    // probe family for cheap class separation: the label-word curves of length 1
    std::vector<CurveEmbedding> probes;
    for (int l = 0; l < X.n_labels; ++l) {
        try {
            probes.push_back(embed_word(X, Word{{l, +1}}, extra_marks));
        } catch (const TopologyError&) {
        }
    }

    struct Cand {
        CurveEmbedding emb;
        CurveClass cls;
        bool seed;
    };
    std::vector<Cand> cands;
    cands.push_back({base, base_cls, true});
    for (const auto& s : opts.seeds) {
        CurveClass k = classify(s, extra_marks);
        if (variant.admits(k)) cands.push_back({s, k, true});
    }
    for (const Word& w : detail::canonical_words(X.n_labels, opts.word_bound)) {
        CurveEmbedding emb;
        try {
            emb = embed_word(X, w, extra_marks);
        } catch (const TopologyError&) {
            continue;
        }
        CurveClass k = classify(emb, extra_marks);
        if (!variant.admits(k)) continue;
        cands.push_back({std::move(emb), std::move(k), false});
    }

    // dedup by class within invariant buckets
    std::map<detail::VertexKey, std::vector<int>> buckets;
    for (const auto& c : cands) {
        auto key = detail::vertex_key(X, c.cls, c.emb, probes, extra_marks);
        auto& bucket = buckets[key];
        bool dup = false;
        for (int v : bucket) {
            if (same_class(ball.verts[v].emb, c.emb, extra_marks)) {
                dup = true;
                if (c.seed) ball.verts[v].seed = true;
                break;
            }
        }
        if (dup) continue;
        bucket.push_back(ball.size());
        ball.verts.push_back({c.emb, c.cls, c.seed});
    }
    ball.base = 0;  // the base candidate was inserted first

    // adjacency
    const int V = ball.size();
    ball.adj.assign(V, {});
    for (int u = 0; u < V; ++u) {
        for (int v = u + 1; v < V; ++v) {
            const auto &cu = ball.verts[u], &cv = ball.verts[v];
            if (X.homology_usable() &&
                X.mod2_pairing(cu.cls.homology, cv.cls.homology) != 0)
                continue;  // odd pairing forces intersection
            if (intersection_number(cu.emb, cv.emb, extra_marks) == 0) {
                ball.adj[u].push_back(v);
                ball.adj[v].push_back(u);
            }
        }
    }

    // all-pairs BFS
    ball.dist.assign(V, std::vector<int>(V, -1));
    for (int s = 0; s < V; ++s) {
        auto& d = ball.dist[s];
        std::queue<int> q;
        d[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : ball.adj[u])
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    q.push(v);
                }
        }
    }
    return ball;
}

// ---- certification: distances agreeing at word bounds L and L+2 ---------------

class CertifiedBall {
  public:
    CurveGraphBall lo, hi;
    std::vector<int> match;  // lo vertex -> hi vertex

    static CertifiedBall build(const SurfaceComplex& X, const GraphVariant& variant,
                               const CurveEmbedding& base, const BallOptions& opts,
                               const MarkedSet& extra_marks = {}) {
        CertifiedBall cb;
        cb.lo = enumerate_ball(X, variant, base, opts, extra_marks);
        BallOptions hi_opts = opts;
        hi_opts.word_bound = opts.word_bound + 2;
        cb.hi = enumerate_ball(X, variant, base, hi_opts, extra_marks);
        cb.match.assign(cb.lo.size(), -1);
        for (int v = 0; v < cb.lo.size(); ++v) {
            cb.match[v] = cb.hi.find_class(cb.lo.verts[v].emb);
            if (cb.match[v] < 0)
                throw err(TopologyError::Kind::ConstructionFailed,
                          "lower ball vertex missing from the larger ball");
        }
        return cb;
    }

    int distance(int u, int v) const { return lo.dist[u][v]; }
    bool certified(int u, int v) const {
        const int dl = lo.dist[u][v];
        const int dh = hi.dist[match[u]][match[v]];
        return dl >= 0 && dl == dh;
    }
};

// ---- geodesics -----------------------------------------------------------------

inline std::vector<std::vector<int>> geodesics(const CurveGraphBall& ball, int a, int b,
                                               int cap = 64) {
    if (a < 0 || b < 0 || a >= ball.size() || b >= ball.size())
        throw err(TopologyError::Kind::NotInBall, "vertex not in ball");
    std::vector<std::vector<int>> out;
    if (ball.dist[a][b] < 0) return out;
    std::vector<int> path = {a};
    std::function<void(int)> dfs = [&](int u) {
        if (static_cast<int>(out.size()) >= cap) return;
        if (u == b) {
            out.push_back(path);
            return;
        }
        for (int v : ball.adj[u]) {
            if (ball.dist[v][b] != ball.dist[u][b] - 1) continue;
            path.push_back(v);
            dfs(v);
            path.pop_back();
        }
    };
    dfs(a);
    return out;
}

// ---- fine-graph distances through the marked-point reduction -------------------

enum class FineVariant {
    Dagger,      // C†(N): reduces to C^s(N-P)
    PmTwoDagger  // C^{±†}_two(N): reduces to C^{±s}_two(N-P)
};

struct FineDistanceReport {
    int distance = -1;
    bool certified = false;
    int n_bigon_points = 0;
    int word_bound = 0;
    int ball_size = 0;
    MarkedSet P;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["distance"] = distance;
        j["certified"] = certified;
        j["bigon_points"] = n_bigon_points;
        j["word_bound"] = word_bound;
        j["ball_size"] = ball_size;
        return j;
    }
};

inline void require_fine_supported(const SurfaceComplex& X) {
    if (X.orientable() || X.derived_genus() < 3)
        throw err(TopologyError::Kind::InvalidInput,
                  "fine curve graphs are defined for nonorientable genus >= 3");
}

inline FineDistanceReport fine_distance(const CurveEmbedding& a_in, const CurveEmbedding& b_in,
                                        FineVariant fv, int word_bound,
                                        const MarkedSet& base_marks = {}) {
    const SurfaceComplex& X = *a_in.X;
    require_fine_supported(X);
    CurveEmbedding a = a_in, b = b_in;
    if (fv == FineVariant::PmTwoDagger) {
        // route one-sided inputs through their neighborhood boundaries
        if (!a.interior_loop && a.orientation_character() == 1)
            a = neighborhood_boundary(a, base_marks);
        if (!b.interior_loop && b.orientation_character() == 1)
            b = neighborhood_boundary(b, base_marks);
    }
    FineDistanceReport rep;
    rep.word_bound = word_bound;
    if (a.same_point_set(b)) {
        rep.distance = 0;
        rep.certified = true;
        return rep;
    }
    Overlay ov(X, {Wall{&a, false, {}}, Wall{&b, false, {}}}, base_marks);
    if (ov.crossings(0, 1) == 0) {
        rep.distance = 1;
        rep.certified = true;
        return rep;
    }
    // marked points: one per empty bigon, making the pair minimal rel P
    rep.P = choose_bigon_points({a, b}, base_marks);
    rep.n_bigon_points = static_cast<int>(rep.P.size());
    MarkedSet marks = base_marks;
    for (const auto& p : rep.P) marks.push_back(p);
    {
        Overlay re(X, {Wall{&a, false, {}}, Wall{&b, false, {}}}, marks);
        for (const auto& g : re.bigons(0, 1))
            if (g.empty)
                throw err(TopologyError::Kind::ConstructionFailed,
                          "bigon points failed to pin the pair");
    }

    const GraphVariant var = fv == FineVariant::Dagger ? variant_Cs() : variant_Cpms_two();
    BallOptions opts;
    opts.word_bound = word_bound;
    opts.radius = 1 << 20;  // the whole enumerated component
    opts.seeds.push_back(b);
    // parallel copies and region cores of the pair overlay are exactly the
    // witnesses small punctured distances need
    for (bool left : {true, false}) {
        try {
            opts.seeds.push_back(push_off(a, left, marks));
        } catch (const TopologyError&) {
        }
        try {
            opts.seeds.push_back(push_off(b, left, marks));
        } catch (const TopologyError&) {
        }
    }
    {
        Overlay pair_ov(X, {Wall{&a, false, {}}, Wall{&b, false, {}}}, marks);
        for (int r = 0; r < static_cast<int>(pair_ov.regions.size()); ++r) {
            for (std::size_t ci = 0; ci < pair_ov.regions[r].circles.size(); ++ci) {
                try {
                    opts.seeds.push_back(region_core(pair_ov, r, static_cast<int>(ci)));
                } catch (const TopologyError&) {
                }
            }
        }
    }
    auto cb = CertifiedBall::build(X, var, a, opts, marks);
    const int bi = cb.lo.find_class(b);
    if (bi < 0) {
        rep.distance = -1;
        return rep;
    }
    rep.distance = cb.distance(0, bi);
    rep.certified = cb.certified(0, bi);
    rep.ball_size = cb.lo.size();
    return rep;
}

// ---- quasi-isometry verification (the f1..f5 inclusion maps) --------------------

enum class QIMap { f1, f2, f3, f4, f5 };

inline std::string qi_map_name(QIMap m) {
    switch (m) {
        case QIMap::f1: return "f1";
        case QIMap::f2: return "f2";
        case QIMap::f3: return "f3";
        case QIMap::f4: return "f4";
        case QIMap::f5: return "f5";
    }
    return "?";
}

struct QIReport {
    std::string map_name;
    int pairs_checked = 0;
    int pairs_certified = 0;
    int isometry_violations = 0;
    int density_checked = 0;
    int density_witnessed = 0;
    std::vector<std::string> violations;
    std::vector<std::string> witnesses;

    bool ok() const {
        return isometry_violations == 0 && density_checked == density_witnessed;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["map"] = map_name;
        j["pairs_checked"] = pairs_checked;
        j["pairs_certified"] = pairs_certified;
        j["isometry_violations"] = isometry_violations;
        j["density_checked"] = density_checked;
        j["density_witnessed"] = density_witnessed;
        j["violations"] = violations;
        j["witnesses"] = witnesses;
        return j;
    }
};

// Isometric embedding + 1-density for the inclusion sub -> super, with the
// paper's prescribed replacement witnesses.
inline QIReport verify_quasi_isometry(const CertifiedBall& sub, const CertifiedBall& super,
                                      QIMap map) {
    QIReport rep;
    rep.map_name = qi_map_name(map);
    if (sub.lo.X != super.lo.X || sub.lo.word_bound != super.lo.word_bound)
        throw err(TopologyError::Kind::InvalidInput, "incompatible ball pair");
    if (!sub.lo.variant.subvariant_of(super.lo.variant))
        throw err(TopologyError::Kind::InvalidInput, "sub variant is not included in super");
    const MarkedSet& marks = sub.lo.marks;

    // vertex matching sub -> super
    std::vector<int> into(sub.lo.size(), -1);
    for (int v = 0; v < sub.lo.size(); ++v) {
        into[v] = super.lo.find_class(sub.lo.verts[v].emb);
        if (into[v] < 0)
            throw err(TopologyError::Kind::ConstructionFailed,
                      "sub vertex missing from super ball");
    }

    // (i) isometric embedding on certified pairs
    for (int u = 0; u < sub.lo.size(); ++u) {
        for (int v = u + 1; v < sub.lo.size(); ++v) {
            if (!sub.lo.in_ball(u) || !sub.lo.in_ball(v)) continue;
            rep.pairs_checked++;
            if (!sub.certified(u, v) || !super.certified(into[u], into[v])) continue;
            rep.pairs_certified++;
            if (sub.distance(u, v) != super.distance(into[u], into[v])) {
                rep.isometry_violations++;
                rep.violations.push_back(
                    "d_sub(" + std::to_string(u) + "," + std::to_string(v) +
                    ")=" + std::to_string(sub.distance(u, v)) + " vs d_super=" +
                    std::to_string(super.distance(into[u], into[v])));
            }
        }
    }

    // (ii) 1-density with prescribed witnesses
    std::vector<bool> hit(super.lo.size(), false);
    for (int v = 0; v < sub.lo.size(); ++v) hit[into[v]] = true;
    for (int v = 0; v < super.lo.size(); ++v) {
        if (!super.lo.in_ball(v)) continue;
        if (hit[v]) continue;
        rep.density_checked++;
        const auto& vert = super.lo.verts[v];
        CurveEmbedding witness;
        std::string how;
        bool found = false;
        try {
            if (vert.cls.mobius_bounding && (map == QIMap::f2 || map == QIMap::f5)) {
                witness = mobius_core(vert.emb, marks);
                how = "core";
                found = true;
            } else if (vert.cls.one_sided && (map == QIMap::f3 || map == QIMap::f4)) {
                witness = neighborhood_boundary(vert.emb, marks);
                how = "neighborhood boundary";
                found = true;
            } else if (vert.cls.separating && map == QIMap::f1) {
                // nonseparating curve disjoint from v (it lies in one
                // complementary component automatically)
                for (int u = 0; u < sub.lo.size() && !found; ++u) {
                    const auto& cand = sub.lo.verts[u];
                    if (cand.cls.separating || !cand.cls.essential) continue;
                    if (intersection_number(cand.emb, vert.emb, marks) == 0) {
                        witness = cand.emb;
                        how = "nonseparating in a complementary component";
                        found = true;
                    }
                }
            }
        } catch (const TopologyError&) {
            found = false;
        }
        if (!found) {
            rep.violations.push_back("no witness for super vertex " + std::to_string(v));
            continue;
        }
        // verify: witness admitted by sub variant and adjacent to v
        CurveClass wk = classify(witness, marks);
        if (!sub.lo.variant.admits(wk)) {
            rep.violations.push_back("witness for " + std::to_string(v) +
                                     " fails the sub predicate");
            continue;
        }
        if (intersection_number(witness, vert.emb, marks) != 0) {
            rep.violations.push_back("witness for " + std::to_string(v) + " not adjacent");
            continue;
        }
        rep.density_witnessed++;
        rep.witnesses.push_back("vertex " + std::to_string(v) + " via " + how);
    }
    return rep;
}

}  // namespace crosscap
