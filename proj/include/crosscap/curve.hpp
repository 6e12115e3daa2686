#pragma once

// PL embeddings of closed curves in a gluing scheme.  A curve is a cyclic
// chain of passes; each pass is a polyline inside one polygon running from a
// point on its entry side to a point on its exit side, and the exit point of
// pass k is identified with the entry point of pass k+1.  A curve that meets
// no side is a single closed interior polyline.

#include "crosscap/rational.hpp"
#include "crosscap/surface.hpp"
#include "crosscap/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace crosscap {

struct Pass {
    int poly = 0;
    std::vector<Pt> pts;
    int enter_side = -1, exit_side = -1;
    Rat enter_t, exit_t;
};

struct SegRef {
    int pass = 0;
    int seg = 0;  // segment from pts[seg] to pts[seg+1] (cyclic for interior loops)
};

class CurveEmbedding {
  public:
    const SurfaceComplex* X = nullptr;
    std::vector<Pass> passes;
    bool interior_loop = false;

    CurveEmbedding() = default;
    CurveEmbedding(const SurfaceComplex& scheme, std::vector<Pass> ps, bool interior = false)
        : X(&scheme), passes(std::move(ps)), interior_loop(interior) {}

    int n_passes() const { return static_cast<int>(passes.size()); }

    // Crossing word: letter of the exit side of each pass.
    Word crossing_word() const {
        Word w;
        if (interior_loop) return w;
        for (const Pass& p : passes) w.push_back(X->exit_letter(p.exit_side));
        return w;
    }

    Word canonical_word() const { return canonical_cyclic(cyclic_reduce(crossing_word())); }

    int orientation_character() const {
        int parity = 0;
        if (interior_loop) return 0;
        for (const Pass& p : passes)
            if (X->pair_reversing(p.exit_side)) parity ^= 1;
        return parity;
    }

    bool one_sided() const { return orientation_character() == 1; }

    // Letter-count parity vector (a homology invariant on one-polygon schemes).
    std::vector<int> parity_vector() const {
        std::vector<int> v(X->n_labels, 0);
        if (interior_loop) return v;
        for (const Pass& p : passes) v[X->sides[p.exit_side].label] ^= 1;
        return v;
    }

    // All segments, with an iteration order stable across runs.
    template <typename F>
    void for_segments(F&& f) const {
        for (int pi = 0; pi < n_passes(); ++pi) {
            const auto& pts = passes[pi].pts;
            const int n = static_cast<int>(pts.size());
            if (interior_loop) {
                for (int i = 0; i < n; ++i) f(SegRef{pi, i}, pts[i], pts[(i + 1) % n]);
            } else {
                for (int i = 0; i + 1 < n; ++i) f(SegRef{pi, i}, pts[i], pts[i + 1]);
            }
        }
    }

    int total_segments() const {
        int n = 0;
        for_segments([&](SegRef, const Pt&, const Pt&) { ++n; });
        return n;
    }

    // Exact equality as a point set (traversal direction and starting pass
    // irrelevant): compare normalized segment multisets.
    std::vector<std::tuple<int, Pt, Pt>> segment_key_set() const {
        std::vector<std::tuple<int, Pt, Pt>> keys;
        for_segments([&](SegRef r, const Pt& a, const Pt& b) {
            Pt u = a, v = b;
            if (v < u) std::swap(u, v);
            keys.emplace_back(passes[r.pass].poly, u, v);
        });
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    bool same_point_set(const CurveEmbedding& o) const {
        return segment_key_set() == o.segment_key_set();
    }

    // Crossing parameters per geometric side id.
    std::map<int, std::vector<Rat>> side_params() const {
        std::map<int, std::vector<Rat>> m;
        if (interior_loop) return m;
        for (const Pass& p : passes) {
            m[p.enter_side].push_back(p.enter_t);
            m[p.exit_side].push_back(p.exit_t);
        }
        return m;
    }

    void validate() const;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["crossing_word"] = word_str(crossing_word());
        j["interior_loop"] = interior_loop;
        nlohmann::json ps = nlohmann::json::array();
        for (const Pass& p : passes) {
            nlohmann::json pj;
            pj["poly"] = p.poly;
            pj["enter_side"] = p.enter_side;
            pj["exit_side"] = p.exit_side;
            nlohmann::json pts = nlohmann::json::array();
            for (const Pt& q : p.pts)
                pts.push_back({{rat_num(q.x).str(), rat_den(q.x).str()},
                               {rat_num(q.y).str(), rat_den(q.y).str()}});
            pj["vertices"] = pts;
            ps.push_back(pj);
        }
        j["passes"] = ps;
        return j;
    }
};

inline void CurveEmbedding::validate() const {
    if (!X) throw err(TopologyError::Kind::InvalidInput, "curve without scheme");
    X->require_geometric();
    if (passes.empty()) throw err(TopologyError::Kind::InvalidInput, "empty curve");
    if (interior_loop) {
        if (passes.size() != 1 || passes[0].pts.size() < 3)
            throw err(TopologyError::Kind::InvalidInput, "bad interior loop");
        if (passes[0].enter_side != -1 || passes[0].exit_side != -1)
            throw err(TopologyError::Kind::InvalidInput, "interior loop cannot cross sides");
    }

    const int np = n_passes();
    for (int k = 0; k < np; ++k) {
        const Pass& p = passes[k];
        if (p.poly < 0 || p.poly >= static_cast<int>(X->polygons.size()))
            throw err(TopologyError::Kind::InvalidInput, "pass chart out of range");
        const auto& poly = X->polygons[p.poly];
        if (!interior_loop) {
            if (p.pts.size() < 2) throw err(TopologyError::Kind::InvalidInput, "short pass");
            if (X->sides[p.enter_side].poly != p.poly || X->sides[p.exit_side].poly != p.poly)
                throw err(TopologyError::Kind::InvalidInput, "pass sides in wrong chart");
            if (!(p.enter_t > 0 && p.enter_t < 1 && p.exit_t > 0 && p.exit_t < 1))
                throw err(TopologyError::Kind::InvalidInput, "crossing parameter out of range");
            if (p.pts.front() != X->side_point(p.enter_side, p.enter_t) ||
                p.pts.back() != X->side_point(p.exit_side, p.exit_t))
                throw err(TopologyError::Kind::InvalidInput, "pass endpoints off declared sides");
            const Pass& q = passes[(k + 1) % np];
            if (X->partner(p.exit_side) != q.enter_side || p.exit_t != q.enter_t)
                throw err(TopologyError::Kind::InvalidInput, "gluing mismatch between passes");
        }
        const std::size_t lo = interior_loop ? 0 : 1;
        const std::size_t hi = interior_loop ? p.pts.size() : p.pts.size() - 1;
        for (std::size_t i = lo; i < hi; ++i)
            if (!point_in_polygon_strict(p.pts[i], poly))
                throw err(TopologyError::Kind::InvalidInput, "pass vertex not interior");
        // no zero-length segments, no doubling back
        const int nseg = interior_loop ? static_cast<int>(p.pts.size())
                                       : static_cast<int>(p.pts.size()) - 1;
        for (int i = 0; i < nseg; ++i) {
            const Pt& a = p.pts[i];
            const Pt& b = p.pts[(i + 1) % p.pts.size()];
            if (a == b) throw err(TopologyError::Kind::InvalidInput, "zero-length segment");
        }
        for (int i = 0; i + 1 < nseg || (interior_loop && i < nseg); ++i) {
            const Pt& a = p.pts[i % p.pts.size()];
            const Pt& b = p.pts[(i + 1) % p.pts.size()];
            const Pt& c = p.pts[(i + 2) % p.pts.size()];
            const Pt u = b - a, v = c - b;
            if (cross(u, v) == 0 && dot(u, v) < 0)
                throw err(TopologyError::Kind::InvalidInput, "polyline doubles back");
        }
    }

    // Distinct crossing parameters per geometric side.
    for (auto& [side, ts] : side_params()) {
        auto sorted = ts;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            if (sorted[i] == sorted[i + 1])
                throw err(TopologyError::Kind::InvalidInput, "coincident side crossings");
        (void)side;
    }

    // Embeddedness: no two non-adjacent segments intersect.
    struct SegBox {
        int pass, seg, poly;
        Pt a, b;
    };
    std::vector<SegBox> segs;
    for_segments([&](SegRef r, const Pt& a, const Pt& b) {
        segs.push_back({r.pass, r.seg, passes[r.pass].poly, a, b});
    });
    const int n = static_cast<int>(segs.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (segs[i].poly != segs[j].poly) continue;
            const bool same_pass = segs[i].pass == segs[j].pass;
            bool adjacent = false;
            if (same_pass) {
                const int npts = static_cast<int>(passes[segs[i].pass].pts.size());
                const int d = std::abs(segs[i].seg - segs[j].seg);
                adjacent = (d == 1) || (interior_loop && d == npts - 1);
            }
            const SegHit h = seg_intersect(segs[i].a, segs[i].b, segs[j].a, segs[j].b);
            if (h.kind == SegSeg::Proper)
                throw err(TopologyError::Kind::InvalidInput, "curve self-intersects");
            if (h.kind == SegSeg::Degenerate && !adjacent)
                throw err(TopologyError::Kind::InvalidInput, "curve self-touches");
        }
    }

    // Disjoint from the scheme's marked points.
    for (int pi = 0; pi < np; ++pi) {
        const Pass& p = passes[pi];
        const int nseg =
            interior_loop ? static_cast<int>(p.pts.size()) : static_cast<int>(p.pts.size()) - 1;
        for (const auto& mp : X->punctures) {
            if (mp.poly != p.poly) continue;
            for (int i = 0; i < nseg; ++i)
                if (on_segment_closed(p.pts[i], p.pts[(i + 1) % p.pts.size()], mp.p))
                    throw err(TopologyError::Kind::InvalidInput, "curve hits a marked point");
        }
    }
}

// Rebuild a curve from a cyclic global polyline.  A side crossing appears as
// two *consecutive* vertices: the exit point (on_side = s, at parameter t)
// followed by the entry point (on_side = partner(s), same t).  All other
// vertices are interior with on_side = -1.  Reversing such a list is again a
// valid global polyline, which the offset machinery relies on.
struct GlobalVertex {
    int poly = 0;
    Pt p;
    int on_side = -1;
    Rat t;
};

inline CurveEmbedding curve_from_global(const SurfaceComplex& X,
                                        const std::vector<GlobalVertex>& verts_in) {
    std::vector<GlobalVertex> verts = verts_in;
    // If the cycle starts on an entry vertex, rotate so every exit precedes
    // its entry within the flat list.
    if (!verts.empty() && verts.front().on_side >= 0 && verts.back().on_side >= 0 &&
        verts.front().on_side == X.partner(verts.back().on_side) &&
        verts.front().t == verts.back().t)
        std::rotate(verts.begin(), verts.end() - 1, verts.end());
    std::vector<int> exit_idx;  // index i such that verts[i] exits, verts[i+1] enters
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i) {
        if (verts[i].on_side < 0) continue;
        const GlobalVertex& nxt = verts[(i + 1) % n];
        if (nxt.on_side == X.partner(verts[i].on_side)) {
            if (nxt.t != verts[i].t)
                throw err(TopologyError::Kind::InvalidInput,
                          "crossing parameters disagree across gluing");
            exit_idx.push_back(i);
            ++i;  // skip the entry vertex
        } else {
            throw err(TopologyError::Kind::InvalidInput,
                      "side vertex not followed by its identified entry point");
        }
    }
    if (exit_idx.empty()) {
        Pass p;
        p.poly = verts.front().poly;
        for (const auto& v : verts) p.pts.push_back(v.p);
        return CurveEmbedding(X, {p}, true);
    }
    std::vector<Pass> passes;
    const int m = static_cast<int>(exit_idx.size());
    for (int k = 0; k < m; ++k) {
        const int enter_at = (exit_idx[(k - 1 + m) % m] + 1) % n;  // entry vertex
        const int exit_at = exit_idx[k];
        Pass pass;
        pass.enter_side = verts[enter_at].on_side;
        pass.enter_t = verts[enter_at].t;
        pass.poly = X.sides[pass.enter_side].poly;
        pass.exit_side = verts[exit_at].on_side;
        pass.exit_t = verts[exit_at].t;
        for (int i = enter_at; ; i = (i + 1) % n) {
            pass.pts.push_back(verts[i].p);
            if (i == exit_at) break;
        }
        passes.push_back(std::move(pass));
    }
    return CurveEmbedding(X, std::move(passes), false);
}

// The global polyline of an embedding (inverse of curve_from_global up to
// starting pass).
inline std::vector<GlobalVertex> global_polyline(const CurveEmbedding& c) {
    std::vector<GlobalVertex> out;
    if (c.interior_loop) {
        for (const Pt& p : c.passes[0].pts) out.push_back({c.passes[0].poly, p, -1, Rat(0)});
        return out;
    }
    for (const Pass& pass : c.passes) {
        out.push_back({pass.poly, pass.pts.front(), pass.enter_side, pass.enter_t});
        for (std::size_t i = 1; i + 1 < pass.pts.size(); ++i)
            out.push_back({pass.poly, pass.pts[i], -1, Rat(0)});
        out.push_back({pass.poly, pass.pts.back(), pass.exit_side, pass.exit_t});
    }
    // rotate so the cycle starts at an entry vertex (exit must pair with the
    // following entry)
    std::rotate(out.begin(), out.end() - 1, out.end());
    return out;
}

}  // namespace crosscap
