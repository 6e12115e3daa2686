#pragma once

// Exact offset constructions along walls of an overlay: parallel push-offs,
// Möbius-band boundaries (the offset of a one-sided curve closes after two
// traversals), transverse copies (one traversal plus a closure segment that
// crosses the curve once), region-core curves (offsets of region boundary
// circles), and the replacement arcs used by bigon removal.
//
// Offsets displace each wall segment by delta in an L1-normalized normal
// direction, reconcile crossing parameters across gluings by averaging, join
// bends by miters and crossing-node turns by corner cuts.  Every construction
// is validated afterwards; callers retry on a shrinking delta ladder.

#include "crosscap/curve.hpp"
#include "crosscap/overlay.hpp"

#include <optional>
#include <vector>

namespace crosscap {

class WalkOffsetter {
  public:
    WalkOffsetter(const Overlay& ov, Rat delta) : OV(ov), X(*ov.X), delta(std::move(delta)) {}

    // ---- closed offsets of a full wall ------------------------------------

    struct ClosedResult {
        CurveEmbedding curve;
        int traversals = 1;        // 2: Möbius-boundary style double traversal
        bool crossed_closure = false;
    };

    // Offset of wall w.  If the offset side flips after one loop:
    //   allow_double -> traverse twice (boundary of the regular neighborhood);
    //   else if allow_crossing -> close with a segment crossing the wall once;
    //   else throw WrongSidedness.
    ClosedResult offset_wall(int w, bool initial_left, bool allow_double, bool allow_crossing) {
        const auto& path = OV.wall_paths[w];
        if (path.empty()) throw err(TopologyError::Kind::InvalidInput, "empty wall path");
        if (OV.walls[w].curve->interior_loop) {
            // Interior loops never change charts; a plain one-chart offset.
            return {offset_interior_loop(w, initial_left), 1, false};
        }
        std::vector<bool> flags;
        const bool closure = propagate_flags(path, initial_left, flags, true);
        if (closure == initial_left) {
            return {build_cyclic(path, flags), 1, false};
        }
        if (allow_double) {
            std::vector<int> path2 = path;
            path2.insert(path2.end(), path.begin(), path.end());
            std::vector<bool> flags2;
            const bool closure2 = propagate_flags(path2, initial_left, flags2, true);
            if (closure2 != initial_left)
                throw err(TopologyError::Kind::ConstructionFailed,
                          "offset failed to close after two traversals");
            return {build_cyclic(path2, flags2), 2, false};
        }
        if (allow_crossing) {
            return {build_cross_closed(path, flags), 1, true};
        }
        throw err(TopologyError::Kind::WrongSidedness,
                  "one-sided curve has no disjoint parallel copy");
    }

    // Offset of one boundary circle of a region, pushed into the region (the
    // circle's own side flags point into the region).
    CurveEmbedding region_core(int region, int circle_idx) {
        const auto& C = OV.regions[region].circles[circle_idx];
        std::vector<int> path;
        std::vector<bool> flags;
        for (const auto& st : C.steps) {
            path.push_back(st.he);
            flags.push_back(st.region_left);
        }
        check_flag_consistency(path, flags, true);
        return build_cyclic(path, flags);
    }

    // Open offset of a circle arc; flags give the offset side per step (the
    // arc's region_left flags push into the region, their negation away).
    std::vector<GlobalVertex> offset_arc(const std::vector<int>& hes,
                                         const std::vector<bool>& flags) {
        check_flag_consistency(hes, flags, false);
        std::vector<GlobalVertex> verts;
        verts.push_back(plain(off_pt(hes[0], flags[0], false), poly_of(hes[0])));
        for (std::size_t k = 0; k + 1 < hes.size(); ++k)
            emit_junction(hes[k], flags[k], hes[k + 1], flags[k + 1], verts);
        verts.push_back(plain(off_pt(hes.back(), flags.back(), true), poly_of(hes.back())));
        return verts;
    }

  private:
    const Overlay& OV;
    const SurfaceComplex& X;
    Rat delta;

    int poly_of(int h) const { return OV.he_edge(h).poly; }

    static GlobalVertex plain(const Pt& p, int poly) { return {poly, p, -1, Rat(0)}; }

    Pt normal(int h, bool left) const {
        const Pt d = OV.he_dir(h);
        Pt n = left ? Pt(-d.y, d.x) : Pt(d.y, -d.x);
        const Rat lam = delta / (rat_abs(n.x) + rat_abs(n.y));
        return {n.x * lam, n.y * lam};
    }

    // Offset of the from/to endpoint of halfedge h.
    Pt off_pt(int h, bool left, bool to_end) const {
        const Pt n = normal(h, left);
        const Pt base = to_end ? OV.nodes[OV.he_to(h)].p : OV.nodes[OV.he_from(h)].p;
        return base + n;
    }

    struct SideCross {
        int exit_side;
        Rat node_t;
        Rat offset_t;  // where the offset line crosses the side
    };

    // Crossing data when halfedge h *ends* on an OnSide node (nullopt else).
    std::optional<SideCross> exit_cross(int h, bool left) const {
        const Overlay::Node& nd = OV.nodes[OV.he_to(h)];
        if (nd.kind != Overlay::Node::Kind::OnSide) return std::nullopt;
        return cross_at(h, left, nd.side, nd.t);
    }
    std::optional<SideCross> enter_cross(int h, bool left) const {
        const Overlay::Node& nd = OV.nodes[OV.he_from(h)];
        if (nd.kind != Overlay::Node::Kind::OnSide) return std::nullopt;
        return cross_at(h, left, nd.side, nd.t);
    }
    SideCross cross_at(int h, bool left, int side, const Rat& t) const {
        const Pt n = normal(h, left);
        const Pt a = OV.nodes[OV.he_from(h)].p + n;
        const Pt b = OV.nodes[OV.he_to(h)].p + n;
        const auto q = line_intersect(a, b, X.side_from(side), X.side_to(side));
        if (!q)
            throw err(TopologyError::Kind::ConstructionFailed, "offset parallel to its side");
        return {side, t, param_on(X.side_from(side), X.side_to(side), *q)};
    }

    // Flag propagation along a chain; returns the flag the *next* traversal of
    // hes[0] would need (for cyclic chains: equality with the initial flag
    // means the offset closes up).
    bool propagate_flags(const std::vector<int>& hes, bool initial, std::vector<bool>& flags,
                         bool cyclic) const {
        const std::size_t m = hes.size();
        flags.assign(m, initial);
        bool cur = initial;
        for (std::size_t k = 0; k < m; ++k) {
            flags[k] = cur;
            if (!cyclic && k + 1 == m) break;
            const int h = hes[k];
            const int hn = hes[(k + 1) % m];
            const Overlay::Node& nd = OV.nodes[OV.he_to(h)];
            if (nd.kind != Overlay::Node::Kind::OnSide) {
                if (OV.he_to(h) != OV.he_from(hn) && k + 1 < m)
                    throw err(TopologyError::Kind::ConstructionFailed, "broken offset chain");
                continue;  // same chart: flag unchanged
            }
            // side transition: choose the next flag so the two offset crossing
            // parameters fall on the same side of the wall's own parameter
            const SideCross c1 = *exit_cross(h, cur);
            const int s1 = sgn(c1.offset_t - c1.node_t);
            if (s1 == 0)
                throw err(TopologyError::Kind::ConstructionFailed, "offset hits the wall crossing");
            bool nxt = cur;
            const SideCross c2a = *enter_cross(hn, cur);
            if (sgn(c2a.offset_t - c2a.node_t) == s1) {
                nxt = cur;
            } else {
                const SideCross c2b = *enter_cross(hn, !cur);
                if (sgn(c2b.offset_t - c2b.node_t) != s1)
                    throw err(TopologyError::Kind::ConstructionFailed,
                              "offset side undecidable across gluing");
                nxt = !cur;
            }
            cur = nxt;
        }
        return cur;
    }

    void check_flag_consistency(const std::vector<int>& hes, const std::vector<bool>& flags,
                                bool cyclic) const {
        std::vector<bool> derived;
        propagate_flags(hes, flags[0], derived, cyclic);
        for (std::size_t k = 0; k < hes.size(); ++k)
            if (derived[k] != flags[k])
                throw err(TopologyError::Kind::ConstructionFailed,
                          "offset flags inconsistent along the walk");
    }

    // Emit the join between consecutive offset segments.
    void emit_junction(int h, bool fh, int hn, bool fn, std::vector<GlobalVertex>& out) const {
        const Overlay::Node& nd = OV.nodes[OV.he_to(h)];
        if (nd.kind == Overlay::Node::Kind::OnSide) {
            const SideCross c1 = *exit_cross(h, fh);
            const SideCross c2 = *enter_cross(hn, fn);
            const Rat tstar = (c1.offset_t + c2.offset_t) / 2;
            const int s = c1.exit_side;
            const int sp = X.partner(s);
            out.push_back({X.sides[s].poly, X.side_point(s, tstar), s, tstar});
            out.push_back({X.sides[sp].poly, X.side_point(sp, tstar), sp, tstar});
            return;
        }
        const bool bend = nd.wall_degree == 2 && !nd.base_point;
        const Pt b1 = off_pt(h, fh, true);
        const Pt a2 = off_pt(hn, fn, false);
        if (bend) {
            const Pt a1 = off_pt(h, fh, false);
            const Pt b2 = off_pt(hn, fn, true);
            const auto mit = line_intersect(a1, b1, a2, b2);
            if (mit) {
                out.push_back(plain(*mit, nd.poly));
                return;
            }
            if (b1 == a2) {
                out.push_back(plain(b1, nd.poly));
                return;
            }
        }
        // corner cut (or parallel-bend fallback)
        out.push_back(plain(b1, nd.poly));
        if (a2 != b1) out.push_back(plain(a2, nd.poly));
    }

    CurveEmbedding build_cyclic(const std::vector<int>& hes, const std::vector<bool>& flags) const {
        std::vector<GlobalVertex> verts;
        const std::size_t m = hes.size();
        for (std::size_t k = 0; k < m; ++k)
            emit_junction(hes[k], flags[k], hes[(k + 1) % m], flags[(k + 1) % m], verts);
        CurveEmbedding c = curve_from_global(X, verts);
        c.validate();
        return c;
    }

    // One traversal whose final side transition is emitted un-reconciled; the
    // concatenation then closes with a segment crossing the wall once.
    CurveEmbedding build_cross_closed(const std::vector<int>& hes,
                                      const std::vector<bool>& flags) const {
        std::vector<GlobalVertex> verts;
        const std::size_t m = hes.size();
        for (std::size_t k = 0; k + 1 < m; ++k)
            emit_junction(hes[k], flags[k], hes[k + 1], flags[k + 1], verts);
        // final junction: keep the exit on its own side of the wall crossing
        const int h = hes[m - 1];
        const Overlay::Node& nd = OV.nodes[OV.he_to(h)];
        if (nd.kind != Overlay::Node::Kind::OnSide)
            throw err(TopologyError::Kind::ConstructionFailed,
                      "crossing closure requires a side transition at the chain start");
        const SideCross c1 = *exit_cross(h, flags[m - 1]);
        const Rat tstar = (c1.offset_t + c1.node_t) / 2;
        const int s = c1.exit_side;
        const int sp = X.partner(s);
        verts.push_back({X.sides[s].poly, X.side_point(s, tstar), s, tstar});
        verts.push_back({X.sides[sp].poly, X.side_point(sp, tstar), sp, tstar});
        CurveEmbedding c = curve_from_global(X, verts);
        c.validate();
        return c;
    }

    CurveEmbedding offset_interior_loop(int w, bool left) const {
        const auto& path = OV.wall_paths[w];
        std::vector<bool> flags(path.size(), left);
        return build_cyclic(path, flags);
    }
};

// ---- exact collar check -------------------------------------------------------

// True when some complementary region of {c, r} is an unmarked annulus with
// one boundary circle on each curve: the exact witness that r is an offset
// copy with a mark-free isotopy collar (the band between a one-sided curve
// and its neighborhood boundary passes the same test).
inline bool offset_collar_clean(const Overlay& check) {
    for (const auto& R : check.regions) {
        if (R.chi != 0 || !R.orientable || !R.marks.empty()) continue;
        if (R.circles.size() != 2) continue;
        const auto& w0 = R.circles[0].walls;
        const auto& w1 = R.circles[1].walls;
        if (w0.size() != 1 || w1.size() != 1) continue;
        if (*w0.begin() != *w1.begin()) return true;
    }
    return false;
}

// ---- high-level constructions with delta ladders ------------------------------

namespace detail {

template <typename BuildFn, typename CheckFn>
auto with_delta_ladder(BuildFn&& build, CheckFn&& check, Rat start = Rat(4), int tries = 48)
    -> decltype(build(start)) {
    Rat d = start;
    for (int i = 0; i < tries; ++i, d /= 2) {
        try {
            auto r = build(d);
            if (check(r, d)) return r;
        } catch (const TopologyError&) {
            // shrink and retry
        }
    }
    throw err(TopologyError::Kind::ConstructionFailed, "offset ladder exhausted");
}

}  // namespace detail

// Disjoint parallel copy of a two-sided curve (throws WrongSidedness for
// one-sided input).  The copy is isotopic to c; with `marks` given, the
// isotopy collar is kept free of them.
inline CurveEmbedding push_off(const CurveEmbedding& c, bool left = true,
                               const MarkedSet& extra_marks = {}) {
    if (!c.interior_loop && c.orientation_character() == 1)
        throw err(TopologyError::Kind::WrongSidedness,
                  "one-sided curve has no disjoint parallel copy");
    Overlay OV(*c.X, {Wall{&c, false, {}}}, extra_marks);
    return detail::with_delta_ladder(
        [&](const Rat& d) {
            WalkOffsetter off(OV, d);
            return off.offset_wall(0, left, false, false).curve;
        },
        [&](const CurveEmbedding& r, const Rat&) {
            Overlay check(*c.X, {Wall{&c, false, {}}, Wall{&r, false, {}}}, extra_marks);
            return check.crossings(0, 1) == 0 && offset_collar_clean(check);
        });
}

// Boundary of the regular neighborhood of a one-sided curve: the offset
// doubles around and closes after two traversals.
inline CurveEmbedding mobius_boundary(const CurveEmbedding& c, const MarkedSet& extra_marks = {}) {
    if (c.interior_loop || c.orientation_character() == 0)
        throw err(TopologyError::Kind::WrongSidedness,
                  "regular-neighborhood boundary doubling needs a one-sided curve");
    Overlay OV(*c.X, {Wall{&c, false, {}}}, extra_marks);
    return detail::with_delta_ladder(
        [&](const Rat& d) {
            WalkOffsetter off(OV, d);
            auto res = off.offset_wall(0, true, true, false);
            if (res.traversals != 2)
                throw err(TopologyError::Kind::ConstructionFailed, "expected double traversal");
            return res.curve;
        },
        [&](const CurveEmbedding& r, const Rat&) {
            Overlay check(*c.X, {Wall{&c, false, {}}, Wall{&r, false, {}}}, extra_marks);
            return check.crossings(0, 1) == 0 && offset_collar_clean(check);
        });
}

// A transverse isotopic copy: disjoint parallel copy for two-sided curves,
// a single-crossing copy for one-sided ones.
inline CurveEmbedding transverse_copy(const CurveEmbedding& c, const MarkedSet& extra_marks = {}) {
    Overlay OV(*c.X, {Wall{&c, false, {}}}, extra_marks);
    const bool one_sided = !c.interior_loop && c.orientation_character() == 1;
    return detail::with_delta_ladder(
        [&](const Rat& d) {
            WalkOffsetter off(OV, d);
            return off.offset_wall(0, true, false, true).curve;
        },
        [&](const CurveEmbedding& r, const Rat&) {
            Overlay check(*c.X, {Wall{&c, false, {}}, Wall{&r, false, {}}}, extra_marks);
            return check.crossings(0, 1) == (one_sided ? 1 : 0);
        });
}

// Core curve of a region boundary circle, pushed into the region.
inline CurveEmbedding region_core(const Overlay& OV, int region, int circle_idx) {
    return detail::with_delta_ladder(
        [&](const Rat& d) {
            WalkOffsetter off(OV, d);
            return off.region_core(region, circle_idx);
        },
        [&](const CurveEmbedding& r, const Rat&) {
            // must stay disjoint from every wall of the overlay
            std::vector<Wall> ws = OV.walls;
            ws.push_back(Wall{&r, false, {}});
            MarkedSet extra;
            for (std::size_t m = OV.X->punctures.size(); m < OV.marks.size(); ++m)
                extra.push_back(OV.marks[m]);
            Overlay check(*OV.X, ws, extra);
            const int rid = static_cast<int>(ws.size()) - 1;
            for (int w = 0; w + 1 < static_cast<int>(ws.size()); ++w)
                if (check.crossings(w, rid) != 0) return false;
            return true;
        });
}

}  // namespace crosscap
