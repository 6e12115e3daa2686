#pragma once

// Surfaces as polygon gluing schemes.  The standard builders produce the
// one-polygon crosscap form a1 a1 a2 a2 ... for N_g and the commutator form
// a1 b1 a1^-1 b1^-1 ... for S_g; the orientation double cover produces a
// two-polygon complex.  Everything downstream (curves, overlays, covers)
// works on the general complex.

#include "crosscap/rational.hpp"
#include "crosscap/word.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace crosscap {

struct MarkedPoint {
    int poly = 0;
    Pt p;
    bool operator==(const MarkedPoint& o) const { return poly == o.poly && p == o.p; }
    bool operator<(const MarkedPoint& o) const {
        if (poly != o.poly) return poly < o.poly;
        return p < o.p;
    }
};

using MarkedSet = std::vector<MarkedPoint>;

enum class SurfaceKind { Orientable, Nonorientable };

class SurfaceComplex {
  public:
    struct Side {
        int poly = 0;   // polygon index
        int idx = 0;    // boundary edge index: from verts[idx] to verts[idx+1 mod n]
        int label = 0;  // pair label
        int sign = +1;  // exponent of the label at this occurrence
        int partner = -1;  // global side id of the other occurrence
    };

    std::vector<std::vector<Pt>> polygons;  // convex, ccw
    std::vector<Side> sides;
    MarkedSet punctures;  // marked points, not deleted ends

    SurfaceKind kind = SurfaceKind::Nonorientable;
    int genus = 0;  // as requested from the builder; covers derive it from chi

    int n_labels = 0;

    // ---- construction -----------------------------------------------------

    static SurfaceComplex build(SurfaceKind kind, int genus, int n_punctures);
    static SurfaceComplex build(SurfaceKind kind, int genus, const MarkedSet& punctures);

    void finalize();  // fills partner table, vertex classes, checks invariants

    // True when every polygon is an honest convex polygon; the N_1 digon is
    // invariants-only and cannot host curve geometry.
    bool geometric() const {
        for (const auto& P : polygons)
            if (P.size() < 3) return false;
        return true;
    }
    void require_geometric() const {
        if (!geometric())
            throw err(TopologyError::Kind::InvalidInput,
                      "this scheme (digon) supports invariants only, not curve geometry");
    }

    // ---- geometry of sides ------------------------------------------------

    int side_count() const { return static_cast<int>(sides.size()); }

    // Endpoints of side s *in the direction of its exponent arrow*.
    Pt side_from(int s) const {
        const Side& sd = sides[s];
        const auto& P = polygons[sd.poly];
        const Pt& a = P[sd.idx];
        const Pt& b = P[(sd.idx + 1) % P.size()];
        return sd.sign > 0 ? a : b;
    }
    Pt side_to(int s) const {
        const Side& sd = sides[s];
        const auto& P = polygons[sd.poly];
        const Pt& a = P[sd.idx];
        const Pt& b = P[(sd.idx + 1) % P.size()];
        return sd.sign > 0 ? b : a;
    }
    // Point at arrow parameter t in (0,1).
    Pt side_point(int s, const Rat& t) const { return lerp(side_from(s), side_to(s), t); }

    // The gluing matches arrow parameters identically.
    int partner(int s) const { return sides[s].partner; }

    // A side pair is of crosscap type (the transition across it reverses
    // local orientation) exactly when the two occurrences carry equal signs.
    bool pair_reversing(int s) const { return sides[s].sign == sides[partner(s)].sign; }
    bool label_reversing(int label) const { return pair_reversing(first_occ_[label]); }

    int first_occurrence(int label) const { return first_occ_[label]; }
    int second_occurrence(int label) const { return second_occ_[label]; }

    // Letter read when a curve exits through global side s.
    Letter exit_letter(int s) const {
        return {sides[s].label, s == first_occ_[sides[s].label] ? +1 : -1};
    }
    // Side a curve exits through when spelling this letter.
    int exit_side(const Letter& l) const {
        if (l.label < 0 || l.label >= n_labels)
            throw err(TopologyError::Kind::InvalidInput, "unknown label in word: " + letter_str(l));
        return l.sign > 0 ? first_occ_[l.label] : second_occ_[l.label];
    }

    int side_at(int poly, int idx) const { return side_of_[poly][idx]; }

    // Vertex class of polygon corner v of polygon `poly`.
    int corner_class(int poly, int v) const {
        const int nv = static_cast<int>(polygons[poly].size());
        return corner_class_[corner_base_[poly] + ((v % nv) + nv) % nv];
    }

    // ---- invariants ---------------------------------------------------------

    int vertex_classes() const { return n_vertex_classes_; }

    // Euler characteristic of the closed glued complex (punctures ignored).
    int complex_chi() const {
        return n_vertex_classes_ - n_labels + static_cast<int>(polygons.size());
    }
    // Euler characteristic of the surface with the marked points deleted.
    int euler_characteristic() const {
        return complex_chi() - static_cast<int>(punctures.size());
    }
    bool orientable() const { return orientable_; }

    int derived_genus() const {
        const int chi = complex_chi();
        return orientable_ ? (2 - chi) / 2 : 2 - chi;
    }

    // Parity of orientation-reversing traversals along a label word.
    int orientation_character(const Word& w) const {
        int parity = 0;
        for (const Letter& l : w) {
            if (l.label < 0 || l.label >= n_labels)
                throw err(TopologyError::Kind::InvalidInput,
                          "unknown label in word: " + letter_str(l));
            if (label_reversing(l.label)) parity ^= 1;
        }
        return parity;
    }

    // Z/2 intersection pairing of the label loops (meaningful for one-polygon
    // schemes, where the letter-parity vector of a curve is a homology
    // invariant): interleaved occurrences pair to 1, a crosscap label pairs
    // with itself to 1.
    const std::vector<std::vector<int>>& pairing_matrix() const { return pairing_; }
    bool homology_usable() const { return polygons.size() == 1; }

    int mod2_pairing(const std::vector<int>& u, const std::vector<int>& v) const {
        int r = 0;
        for (int i = 0; i < n_labels; ++i) {
            if (!u[i]) continue;
            for (int j = 0; j < n_labels; ++j) r ^= (v[j] & pairing_[i][j]);
        }
        return r;
    }

    std::string side_word_str() const {
        std::string s;
        for (std::size_t i = 0; i < sides.size(); ++i) {
            if (i) s += " ";
            s += "a" + std::to_string(sides[i].label + 1);
            if (sides[i].sign < 0) s += "-";
        }
        return s;
    }

    nlohmann::json to_json() const;

  private:
    std::vector<int> first_occ_, second_occ_;
    std::vector<std::vector<int>> side_of_;  // [poly][idx] -> global side id
    std::vector<int> corner_class_;
    std::vector<int> corner_base_;
    int n_vertex_classes_ = 0;
    bool orientable_ = true;
    std::vector<std::vector<int>> pairing_;

    void compute_vertex_classes();
    void compute_orientability();
    void compute_pairing();
};

namespace detail {

// Convex lattice polygon approximating a regular m-gon of radius ~1000.
inline std::vector<Pt> lattice_polygon(int m) {
    std::vector<Pt> v;
    v.reserve(m);
    const double R = 1000.0;
    for (int k = 0; k < m; ++k) {
        const double th = 2.0 * 3.14159265358979323846 * k / m;
        v.emplace_back(static_cast<long>(std::lround(R * std::cos(th))),
                       static_cast<long>(std::lround(R * std::sin(th))));
    }
    if (!polygon_convex_ccw(v))
        throw err(TopologyError::Kind::ConstructionFailed, "polygon rounding lost convexity");
    return v;
}

// Deterministic rational points on the circle of radius 125 about the origin
// (Pythagorean parametrization), pairwise distinct.
inline MarkedSet default_punctures(int n) {
    MarkedSet pts;
    for (int j = 0; j < n; ++j) {
        const Rat u(j, 1);
        const Rat d = 1 + u * u;
        pts.push_back({0, Pt(Rat(125) * (1 - u * u) / d, Rat(125) * (2 * u) / d)});
    }
    return pts;
}

}  // namespace detail

inline SurfaceComplex SurfaceComplex::build(SurfaceKind kind, int genus,
                                            const MarkedSet& punctures) {
    if (genus < 1)
        throw err(TopologyError::Kind::InvalidInput, "genus must be at least 1");
    SurfaceComplex X;
    X.kind = kind;
    X.genus = genus;
    X.punctures = punctures;
    if (kind == SurfaceKind::Nonorientable) {
        const int m = 2 * genus;
        if (m == 2) {
            // N_1: a true digon.  Geometrically degenerate (both sides span the
            // same segment); kept for invariants only.
            X.polygons.push_back({Pt(-1000, 0), Pt(1000, 0)});
        } else {
            X.polygons.push_back(detail::lattice_polygon(m));
        }
        for (int i = 0; i < m; ++i) X.sides.push_back({0, i, i / 2, +1, -1});
        X.n_labels = genus;
    } else {
        const int m = 4 * genus;
        X.polygons.push_back(detail::lattice_polygon(m));
        // Word a1 b1 a1^-1 b1^-1 a2 b2 ...
        for (int h = 0; h < genus; ++h) {
            X.sides.push_back({0, 4 * h + 0, 2 * h + 0, +1, -1});
            X.sides.push_back({0, 4 * h + 1, 2 * h + 1, +1, -1});
            X.sides.push_back({0, 4 * h + 2, 2 * h + 0, -1, -1});
            X.sides.push_back({0, 4 * h + 3, 2 * h + 1, -1, -1});
        }
        X.n_labels = 2 * genus;
    }
    X.finalize();
    return X;
}

inline SurfaceComplex SurfaceComplex::build(SurfaceKind kind, int genus, int n_punctures) {
    if (n_punctures < 0)
        throw err(TopologyError::Kind::InvalidInput, "puncture count must be nonnegative");
    return build(kind, genus, detail::default_punctures(n_punctures));
}

inline void SurfaceComplex::finalize() {
    first_occ_.assign(n_labels, -1);
    second_occ_.assign(n_labels, -1);
    for (int s = 0; s < side_count(); ++s) {
        const int l = sides[s].label;
        if (l < 0 || l >= n_labels)
            throw err(TopologyError::Kind::InvalidInput, "side label out of range");
        if (first_occ_[l] < 0)
            first_occ_[l] = s;
        else if (second_occ_[l] < 0)
            second_occ_[l] = s;
        else
            throw err(TopologyError::Kind::InvalidInput, "label occurs more than twice");
    }
    for (int l = 0; l < n_labels; ++l) {
        if (first_occ_[l] < 0 || second_occ_[l] < 0)
            throw err(TopologyError::Kind::InvalidInput, "label must occur exactly twice");
        sides[first_occ_[l]].partner = second_occ_[l];
        sides[second_occ_[l]].partner = first_occ_[l];
    }
    side_of_.assign(polygons.size(), {});
    for (std::size_t p = 0; p < polygons.size(); ++p)
        side_of_[p].assign(polygons[p].size(), -1);
    for (int s = 0; s < side_count(); ++s) {
        if (side_of_[sides[s].poly][sides[s].idx] != -1)
            throw err(TopologyError::Kind::InvalidInput, "duplicate side");
        side_of_[sides[s].poly][sides[s].idx] = s;
    }
    for (std::size_t p = 0; p < polygons.size(); ++p) {
        if (polygons[p].size() >= 3 && !polygon_convex_ccw(polygons[p]))
            throw err(TopologyError::Kind::InvalidInput, "polygon must be convex ccw");
        for (int i : side_of_[p])
            if (i < 0) throw err(TopologyError::Kind::InvalidInput, "unlabeled polygon side");
    }

    compute_vertex_classes();
    compute_orientability();
    compute_pairing();

    for (std::size_t i = 0; i < punctures.size(); ++i) {
        const auto& mp = punctures[i];
        if (mp.poly < 0 || mp.poly >= static_cast<int>(polygons.size()))
            throw err(TopologyError::Kind::InvalidInput, "marked point chart out of range");
        if (geometric() && !point_in_polygon_strict(mp.p, polygons[mp.poly]))
            throw err(TopologyError::Kind::InvalidInput, "marked point must be interior");
        for (std::size_t j = i + 1; j < punctures.size(); ++j)
            if (punctures[j] == mp)
                throw err(TopologyError::Kind::InvalidInput, "marked points must be distinct");
    }
}

inline void SurfaceComplex::compute_vertex_classes() {
    corner_base_.assign(polygons.size() + 1, 0);
    for (std::size_t p = 0; p < polygons.size(); ++p)
        corner_base_[p + 1] = corner_base_[p] + static_cast<int>(polygons[p].size());
    const int n = corner_base_.back();
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](int a, int b) { uf[find(a)] = find(b); };

    auto corner_id = [&](int poly, int v) {
        const int nv = static_cast<int>(polygons[poly].size());
        return corner_base_[poly] + ((v % nv) + nv) % nv;
    };
    auto arrow_tail = [&](int s) {
        return sides[s].sign > 0 ? corner_id(sides[s].poly, sides[s].idx)
                                 : corner_id(sides[s].poly, sides[s].idx + 1);
    };
    auto arrow_head = [&](int s) {
        return sides[s].sign > 0 ? corner_id(sides[s].poly, sides[s].idx + 1)
                                 : corner_id(sides[s].poly, sides[s].idx);
    };
    for (int s = 0; s < side_count(); ++s) {
        const int t = partner(s);
        unite(arrow_tail(s), arrow_tail(t));
        unite(arrow_head(s), arrow_head(t));
    }
    std::map<int, int> renum;
    corner_class_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        auto it = renum.find(r);
        if (it == renum.end()) it = renum.emplace(r, static_cast<int>(renum.size())).first;
        corner_class_[i] = it->second;
    }
    n_vertex_classes_ = static_cast<int>(renum.size());
}

inline void SurfaceComplex::compute_orientability() {
    // Parity union-find on polygons: gluing across a crosscap-type pair flips
    // the orientation bit; an odd cycle means nonorientable.
    const int n = static_cast<int>(polygons.size());
    std::vector<int> parent(n), parity(n, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
        int par = 0;
        while (parent[x] != x) {
            par ^= parity[x];
            x = parent[x];
        }
        return {x, par};
    };
    orientable_ = true;
    for (int l = 0; l < n_labels; ++l) {
        const int s = first_occ_[l], t = second_occ_[l];
        const int bit = pair_reversing(s) ? 1 : 0;
        auto [ra, pa] = find(sides[s].poly);
        auto [rb, pb] = find(sides[t].poly);
        if (ra == rb) {
            if ((pa ^ pb) != bit) orientable_ = false;
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ bit;
        }
    }
}

inline void SurfaceComplex::compute_pairing() {
    pairing_.assign(n_labels, std::vector<int>(n_labels, 0));
    for (int x = 0; x < n_labels; ++x) {
        pairing_[x][x] = label_reversing(x) ? 1 : 0;
        for (int y = x + 1; y < n_labels; ++y) {
            const int x1 = first_occ_[x], x2 = second_occ_[x];
            const int y1 = first_occ_[y], y2 = second_occ_[y];
            if (sides[x1].poly != sides[x2].poly || sides[y1].poly != sides[y2].poly ||
                sides[x1].poly != sides[y1].poly)
                continue;
            const int a = sides[x1].idx, b = sides[x2].idx;
            const int c = sides[y1].idx, d = sides[y2].idx;
            auto inside = [&](int p, int lo, int hi) {
                if (lo < hi) return lo < p && p < hi;
                return p > lo || p < hi;
            };
            const bool interleaved = inside(c, a, b) != inside(d, a, b);
            pairing_[x][y] = pairing_[y][x] = interleaved ? 1 : 0;
        }
    }
}

inline nlohmann::json SurfaceComplex::to_json() const {
    nlohmann::json j;
    j["kind"] = orientable() ? "orientable" : "nonorientable";
    j["genus"] = derived_genus();
    j["side_word"] = side_word_str();
    nlohmann::json punct = nlohmann::json::array();
    for (const auto& mp : punctures) {
        punct.push_back({{"poly", mp.poly},
                         {"x", {rat_num(mp.p.x).str(), rat_den(mp.p.x).str()}},
                         {"y", {rat_num(mp.p.y).str(), rat_den(mp.p.y).str()}}});
    }
    j["punctures"] = punct;
    j["euler_characteristic"] = euler_characteristic();
    j["polygons"] = polygons.size();
    return j;
}

// ---- numeric invariants -----------------------------------------------------

struct SurfaceInvariants {
    int euler_characteristic = 0;
    bool orientable = false;
    bool xi_two_defined = false;
    int xi_two = 0;  // valid only for nonorientable surfaces
};

// Two-sided complexity per the odd/even genus case split.
inline int two_sided_complexity(int genus, int n_punctures) {
    if (genus % 2 == 1) return 3 * (genus - 1) / 2 + n_punctures - 2;
    return 3 * genus / 2 + n_punctures - 3;
}

inline int xi_two(const SurfaceComplex& X) {
    if (X.orientable())
        throw err(TopologyError::Kind::UnsupportedInvariant,
                  "two-sided complexity is defined for nonorientable surfaces only");
    return two_sided_complexity(X.derived_genus(), static_cast<int>(X.punctures.size()));
}

inline SurfaceInvariants invariants(const SurfaceComplex& X) {
    SurfaceInvariants inv;
    inv.euler_characteristic = X.euler_characteristic();
    inv.orientable = X.orientable();
    if (!inv.orientable) {
        inv.xi_two_defined = true;
        inv.xi_two = xi_two(X);
    }
    return inv;
}

}  // namespace crosscap
