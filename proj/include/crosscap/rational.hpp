#pragma once

// Exact rational planar geometry kernel. Every predicate used by the
// arrangement machinery is decided exactly; there are no epsilons anywhere
// in this header.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crosscap {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sgn(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

struct Pt {
    Rat x, y;

    Pt() = default;
    Pt(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}
    Pt(long px, long py) : x(px), y(py) {}

    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Pt& o) const { return !(*this == o); }
    bool operator<(const Pt& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }

    Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
    Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
    Pt operator*(const Rat& s) const { return {x * s, y * s}; }
};

inline Rat cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

// Sign of the signed area of triangle (a,b,c): +1 ccw, -1 cw, 0 collinear.
inline int orient(const Pt& a, const Pt& b, const Pt& c) {
    return sgn(cross(b - a, c - a));
}

// c strictly inside the closed segment [a,b] (collinearity assumed checked).
inline bool between_strict(const Pt& a, const Pt& b, const Pt& c) {
    if (orient(a, b, c) != 0) return false;
    if (a.x != b.x) return (a.x < c.x && c.x < b.x) || (b.x < c.x && c.x < a.x);
    return (a.y < c.y && c.y < b.y) || (b.y < c.y && c.y < a.y);
}

inline bool on_segment_closed(const Pt& a, const Pt& b, const Pt& c) {
    if (orient(a, b, c) != 0) return false;
    return dot(c - a, c - b) <= 0;
}

// Interpolation a + t*(b-a).
inline Pt lerp(const Pt& a, const Pt& b, const Rat& t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// Parameter of p along [a,b]; p assumed collinear with the segment.
inline Rat param_on(const Pt& a, const Pt& b, const Pt& p) {
    if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
    return (p.y - a.y) / (b.y - a.y);
}

enum class SegSeg {
    Disjoint,
    Proper,       // one transversal interior-interior crossing
    Degenerate,   // endpoint contact or collinear overlap
};

struct SegHit {
    SegSeg kind = SegSeg::Disjoint;
    Pt at;        // valid when kind == Proper
    Rat t1, t2;   // parameters of the hit on segment 1 resp. 2
};

// Exact classification of the intersection of closed segments [a,b], [c,d].
// Shared endpoints and tangencies are reported as Degenerate; the caller
// decides whether they are expected (consecutive polyline segments) or a
// general-position violation.
inline SegHit seg_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    SegHit h;
    const Pt r = b - a, s = d - c;
    const Rat denom = cross(r, s);
    const Pt ac = c - a;
    if (denom == 0) {
        if (sgn(cross(ac, r)) != 0) return h;  // parallel, distinct lines
        // Collinear: overlap test on the shared line.
        const Rat rr = dot(r, r);
        Rat t0 = dot(ac, r) / rr;
        Rat t1 = t0 + dot(s, r) / rr;
        if (t0 > t1) std::swap(t0, t1);
        if (t1 < 0 || t0 > 1) return h;
        h.kind = SegSeg::Degenerate;
        return h;
    }
    const Rat t = cross(ac, s) / denom;
    const Rat u = cross(ac, r) / denom;
    if (t < 0 || t > 1 || u < 0 || u > 1) return h;
    h.t1 = t;
    h.t2 = u;
    h.at = lerp(a, b, t);
    h.kind = (t > 0 && t < 1 && u > 0 && u < 1) ? SegSeg::Proper : SegSeg::Degenerate;
    return h;
}

// Intersection point of the *lines* through [a,b] and [c,d]; nullopt if parallel.
inline std::optional<Pt> line_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    const Pt r = b - a, s = d - c;
    const Rat denom = cross(r, s);
    if (denom == 0) return std::nullopt;
    const Rat t = cross(c - a, s) / denom;
    return lerp(a, b, t);
}

// Strict point-in-polygon by crossing number; the boundary is forbidden
// (callers must guarantee p is off every edge, which our general-position
// checks do).
inline bool point_in_polygon_strict(const Pt& p, const std::vector<Pt>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& u = poly[i];
        const Pt& v = poly[(i + 1) % n];
        if (on_segment_closed(u, v, p)) return false;
        const bool uy = u.y > p.y, vy = v.y > p.y;
        if (uy == vy) continue;
        // x coordinate of the edge at height p.y
        const Rat xcut = u.x + (p.y - u.y) / (v.y - u.y) * (v.x - u.x);
        if (xcut > p.x) inside = !inside;
    }
    return inside;
}

// Twice the signed area of a closed polygon (ccw positive).
inline Rat signed_area2(const std::vector<Pt>& poly) {
    Rat a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& u = poly[i];
        const Pt& v = poly[(i + 1) % poly.size()];
        a += cross(u, v);
    }
    return a;
}

inline bool polygon_convex_ccw(const std::vector<Pt>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) <= 0) return false;
    }
    return true;
}

// Angular comparator for direction vectors around a node, ccw starting from
// direction (1,0).  Exact: half-plane split then cross-product sign.
inline bool angle_less(const Pt& u, const Pt& v) {
    auto half = [](const Pt& w) {
        // 0: upper half including positive x-axis; 1: lower half incl. negative x-axis
        if (w.y > 0 || (w.y == 0 && w.x > 0)) return 0;
        return 1;
    };
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
}

class TopologyError : public std::runtime_error {
  public:
    enum class Kind {
        InvalidInput,
        NotGeneric,      // perturbation required
        NotSimple,       // word admits no embedded realization
        NotReduced,      // word cancels / reduces to the trivial loop
        WrongSidedness,
        NotMobiusBounding,
        NotInBall,
        Uncertified,
        GeodesityViolation,
        SearchExhausted,
        UnsupportedInvariant,
        ConstructionFailed,
    };

    TopologyError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

inline TopologyError err(TopologyError::Kind k, const std::string& msg) {
    return TopologyError(k, msg);
}

}  // namespace crosscap
