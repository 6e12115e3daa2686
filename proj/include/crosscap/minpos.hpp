#pragma once

// Minimal position via bigon removal.  A bigon of a transverse pair is a
// two-corner disk region of their overlay; removing it reroutes one curve
// along an offset of the other curve's arc, past the two crossings.  Marked
// points block removal: only bigons free of them are removable, which is the
// bigon criterion relative to N - P.

#include "crosscap/curve.hpp"
#include "crosscap/offsets.hpp"
#include "crosscap/overlay.hpp"

#include <optional>
#include <random>
#include <vector>

namespace crosscap {

namespace detail {

// Map a circle arc of wall w onto a contiguous run of the wall's path.
// Returns path indices in traversal order.
inline std::vector<int> arc_path_run(const Overlay& OV, int w, const Overlay::Circle::Arc& arc) {
    const auto& path = OV.wall_paths[w];
    const int n = static_cast<int>(path.size());
    std::vector<int> pos_of_he(2 * OV.edges.size(), -1);
    for (int i = 0; i < n; ++i) pos_of_he[path[i]] = i;
    std::vector<int> run;
    for (int he : arc.hes) {
        int p = pos_of_he[he];
        if (p < 0) p = pos_of_he[he ^ 1];
        if (p < 0)
            throw err(TopologyError::Kind::ConstructionFailed, "arc halfedge not on wall path");
        run.push_back(p);
    }
    // Normalize to traversal order (the circle may walk the strand backwards).
    if (run.size() >= 2 && (run[1] - run[0] + n) % n != 1) std::reverse(run.begin(), run.end());
    for (std::size_t k = 0; k + 1 < run.size(); ++k)
        if ((run[k + 1] - run[k] + n) % n != 1)
            throw err(TopologyError::Kind::ConstructionFailed, "bigon arc not contiguous");
    return run;
}

inline GlobalVertex node_vertex(const Overlay& OV, int node) {
    const auto& nd = OV.nodes[node];
    if (nd.kind == Overlay::Node::Kind::OnSide) return {nd.poly, nd.p, nd.side, nd.t};
    return {nd.poly, nd.p, -1, Rat(0)};
}

}  // namespace detail

// Reroute the `mover` wall past the bigon: its arc across the bigon is
// replaced by an offset copy of the other arc, dropping both corner
// crossings.  Marked points must stay outside the swept strip; the caller
// retries on a delta ladder.
inline CurveEmbedding remove_bigon_once(const Overlay& OV, const Overlay::Bigon& bigon,
                                        int mover, const Rat& delta) {
    const auto& arc_b = bigon.arc0.wall == mover ? bigon.arc0 : bigon.arc1;
    const auto& arc_a = bigon.arc0.wall == mover ? bigon.arc1 : bigon.arc0;
    if (arc_b.wall != mover || arc_a.wall == mover)
        throw err(TopologyError::Kind::InvalidInput, "mover does not bound this bigon");
    const SurfaceComplex& X = *OV.X;
    const auto& path = OV.wall_paths[mover];
    const int n = static_cast<int>(path.size());

    const std::vector<int> run = detail::arc_path_run(OV, mover, arc_b);
    const int first_kept = (run.back() + 1) % n;
    const int last_kept = (run.front() - 1 + n) % n;
    const int kept_len = (last_kept - first_kept + n) % n + 1;
    if (kept_len + static_cast<int>(run.size()) != n)
        throw err(TopologyError::Kind::ConstructionFailed, "bigon arc run inconsistent");

    // Corner nodes in mover-traversal order: the arc runs X .. Y.
    const int corner_x = OV.he_from(path[run.front()]);
    (void)corner_x;

    std::vector<GlobalVertex> verts;
    auto edge_point = [&](int path_idx, const Rat& frac) {
        const int he = path[path_idx];
        const Pt a = OV.nodes[OV.he_from(he)].p;
        const Pt b = OV.nodes[OV.he_to(he)].p;
        return GlobalVertex{OV.he_edge(he).poly, lerp(a, b, frac), -1, Rat(0)};
    };

    // Kept chain: from q_start on the first kept edge to q_end on the last.
    if (kept_len == 1) {
        verts.push_back(edge_point(first_kept, Rat(1, 3)));
        verts.push_back(edge_point(first_kept, Rat(2, 3)));
    } else {
        verts.push_back(edge_point(first_kept, Rat(1, 2)));
        for (int k = 0; k + 1 < kept_len; ++k) {
            const int idx = (first_kept + k) % n;
            const int node = OV.he_to(path[idx]);
            const int next_start = OV.he_from(path[(idx + 1) % n]);
            const auto& nd = OV.nodes[node];
            if (node != next_start) {
                // side crossing: emit the exit and entry points as a pair
                verts.push_back(detail::node_vertex(OV, node));
                verts.push_back(detail::node_vertex(OV, next_start));
                continue;
            }
            const bool skip = nd.kind == Overlay::Node::Kind::Interior &&
                              (nd.wall_degree >= 4 || nd.base_point);
            if (!skip) verts.push_back(detail::node_vertex(OV, node));
        }
        verts.push_back(edge_point(last_kept, Rat(1, 2)));
    }

    // Replacement: offset of the other arc pushed away from the bigon.
    WalkOffsetter off(OV, delta);
    std::vector<bool> away;
    for (bool f : arc_a.region_left) away.push_back(!f);
    std::vector<GlobalVertex> repl = off.offset_arc(arc_a.hes, away);
    // Orient the replacement from the X corner (start of the mover arc)
    // toward the Y corner.
    const int x_node = OV.he_from(path[run.front()]);
    const int arc_a_start = OV.he_from(arc_a.hes.front());
    if (arc_a_start != x_node) std::reverse(repl.begin(), repl.end());
    for (auto& v : repl) verts.push_back(v);

    CurveEmbedding out = curve_from_global(X, verts);
    out.validate();
    return out;
}

struct MinPosResult {
    CurveEmbedding a, b;
    int crossings = 0;
    int removals = 0;
};

struct MinPosOptions {
    std::optional<unsigned long> seed;  // randomized bigon/mover choice when set
    bool allow_move_first = true;       // may isotope `a` as well as `b`
};

// Isotope the pair rel the marked points until no empty bigon remains.
inline MinPosResult minimal_position(const CurveEmbedding& a, const CurveEmbedding& b,
                                     const MarkedSet& extra_marks = {},
                                     const MinPosOptions& opts = {}) {
    const SurfaceComplex& X = *a.X;
    MinPosResult res{a, b, 0, 0};
    std::mt19937_64 rng(opts.seed.value_or(0));
    for (int guard = 0;; ++guard) {
        if (guard > 10000)
            throw err(TopologyError::Kind::ConstructionFailed, "bigon removal did not terminate");
        Overlay ov(X, {Wall{&res.a, false, {}}, Wall{&res.b, false, {}}}, extra_marks);
        auto bgs = ov.bigons(0, 1);
        std::vector<Overlay::Bigon> empties;
        for (auto& g : bgs)
            if (g.empty) empties.push_back(g);
        res.crossings = ov.crossings(0, 1);
        if (empties.empty()) return res;

        std::size_t pick = 0;
        int mover = 1;
        if (opts.seed) {
            pick = static_cast<std::size_t>(rng() % empties.size());
            if (opts.allow_move_first) mover = static_cast<int>(rng() % 2);
        }
        const Overlay::Bigon& bg = empties[pick];
        const int before = res.crossings;
        CurveEmbedding moved = detail::with_delta_ladder(
            [&](const Rat& d) { return remove_bigon_once(ov, bg, mover, d); },
            [&](const CurveEmbedding& cand, const Rat&) {
                const CurveEmbedding& other = mover == 1 ? res.a : res.b;
                Overlay check(X, {Wall{&other, false, {}}, Wall{&cand, false, {}}}, extra_marks);
                return check.crossings(0, 1) == before - 2;
            },
            Rat(1, 4));
        (res.removals)++;
        if (mover == 1)
            res.b = std::move(moved);
        else
            res.a = std::move(moved);
    }
}

// Geometric intersection number rel the marked points.  Identical embeddings
// and non-generic pairs are resolved through transverse copies first.
inline int intersection_number(const CurveEmbedding& a, const CurveEmbedding& b,
                               const MarkedSet& extra_marks = {}) {
    const SurfaceComplex& X = *a.X;
    CurveEmbedding bb = b;
    if (a.same_point_set(b)) {
        bb = transverse_copy(b, extra_marks);
    } else {
        bool generic = true;
        try {
            Overlay probe(X, {Wall{&a, false, {}}, Wall{&bb, false, {}}}, extra_marks);
        } catch (const TopologyError&) {
            generic = false;
        }
        if (!generic) {
            if (!bb.interior_loop && bb.orientation_character() == 1)
                bb = transverse_copy(b, extra_marks);
            else
                bb = push_off(b, true, extra_marks);
        }
    }
    return minimal_position(a, bb, extra_marks).crossings;
}

// Pairwise transversality by disjoint push-off perturbation; each output is
// within fine distance 1 of its input (identical or a disjoint copy).
inline std::vector<CurveEmbedding> perturb_transverse(const std::vector<CurveEmbedding>& curves,
                                                      const MarkedSet& extra_marks = {}) {
    if (curves.empty()) return {};
    const SurfaceComplex& X = *curves[0].X;
    for (const auto& c : curves)
        if (!c.interior_loop && c.orientation_character() == 1)
            throw err(TopologyError::Kind::WrongSidedness,
                      "one-sided input: take the regular-neighborhood boundary first");
    std::vector<CurveEmbedding> out;
    for (const auto& c : curves) {
        auto generic_against = [&](const CurveEmbedding& cand) {
            std::vector<Wall> ws;
            for (const auto& prev : out) ws.push_back(Wall{&prev, false, {}});
            ws.push_back(Wall{&cand, false, {}});
            try {
                Overlay probe(X, ws, extra_marks);
            } catch (const TopologyError&) {
                return false;
            }
            return true;
        };
        if (generic_against(c)) {
            out.push_back(c);
            continue;
        }
        // replace by a parallel copy; vary the offset until generic
        bool placed = false;
        Rat d(1, 3);
        for (int attempt = 0; attempt < 48 && !placed; ++attempt, d /= 2) {
            for (bool left : {true, false}) {
                CurveEmbedding cand = c;
                try {
                    Overlay single(X, {Wall{&c, false, {}}}, extra_marks);
                    WalkOffsetter off(single, d);
                    cand = off.offset_wall(0, left, false, false).curve;
                } catch (const TopologyError&) {
                    continue;
                }
                Overlay pair_check(X, {Wall{&c, false, {}}, Wall{&cand, false, {}}}, extra_marks);
                if (pair_check.crossings(0, 1) != 0) continue;
                if (generic_against(cand)) {
                    out.push_back(cand);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed)
            throw err(TopologyError::Kind::ConstructionFailed,
                      "could not perturb curve to general position");
    }
    return out;
}

// One marked point inside every empty bigon of every pair, placed at a
// certified interior point; afterwards all pairs are in minimal position
// rel P by the bigon criterion.
inline MarkedSet choose_bigon_points(const std::vector<CurveEmbedding>& curves,
                                     const MarkedSet& existing = {}) {
    if (curves.empty()) return {};
    const SurfaceComplex& X = *curves[0].X;
    MarkedSet chosen;
    auto all_marks = [&]() {
        MarkedSet m = existing;
        for (const auto& p : chosen) m.push_back(p);
        return m;
    };
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            for (int round = 0; round < 64; ++round) {
                Overlay ov(X, {Wall{&curves[i], false, {}}, Wall{&curves[j], false, {}}},
                           all_marks());
                auto bgs = ov.bigons(0, 1);
                bool added = false;
                for (const auto& g : bgs) {
                    if (!g.empty) continue;
                    chosen.push_back(ov.interior_point(g.region));
                    added = true;
                    break;  // re-overlay so later bigons see the new point
                }
                if (!added) break;
            }
        }
    }
    // exactly-one verification
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            Overlay ov(X, {Wall{&curves[i], false, {}}, Wall{&curves[j], false, {}}},
                       all_marks());
            for (const auto& g : ov.bigons(0, 1)) {
                int inside = 0;
                for (int m : ov.regions[g.region].marks)
                    if (static_cast<std::size_t>(m) >= X.punctures.size() + existing.size())
                        ++inside;
                if (inside != 1)
                    throw err(TopologyError::Kind::ConstructionFailed,
                              "bigon point placement failed exact-one check");
            }
        }
    return chosen;
}

// Isotope the b-curves rel P until the whole collection is pairwise minimal.
// The a-curves are never moved.
inline std::vector<CurveEmbedding> augment_minimal_position(
    const std::vector<CurveEmbedding>& a_list, const std::vector<CurveEmbedding>& b_list,
    const MarkedSet& extra_marks = {}) {
    if (a_list.empty() && b_list.empty()) return {};
    const SurfaceComplex& X = a_list.empty() ? *b_list[0].X : *a_list[0].X;
    std::vector<CurveEmbedding> bs = b_list;
    const int na = static_cast<int>(a_list.size());
    const int nb = static_cast<int>(bs.size());
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool dirty = false;
        for (int i = 0; i < na + nb; ++i) {
            for (int j = std::max(i + 1, na); j < na + nb; ++j) {
                // j indexes a movable curve; i may be fixed or movable
                const CurveEmbedding& ci = i < na ? a_list[i] : bs[i - na];
                CurveEmbedding& cj = bs[j - na];
                Overlay ov(X, {Wall{&ci, false, {}}, Wall{&cj, false, {}}}, extra_marks);
                bool has_empty = false;
                for (const auto& g : ov.bigons(0, 1))
                    if (g.empty) has_empty = true;
                if (!has_empty) continue;
                auto r = minimal_position(ci, cj, extra_marks);
                cj = r.b;
                dirty = true;
            }
        }
        if (!dirty) return bs;
    }
    throw err(TopologyError::Kind::ConstructionFailed, "augmentation did not stabilize");
}

}  // namespace crosscap
