#pragma once

// Isotopy-class data for embedded curves: sidedness, separation, the vertex
// predicates of the curve-graph family (essential, Möbius-bounding,
// surviving, puncture-peripheral), class equality by annulus detection, and
// the Möbius core/boundary correspondence.

#include "crosscap/embed.hpp"
#include "crosscap/minpos.hpp"
#include "crosscap/offsets.hpp"

#include <optional>
#include <vector>

namespace crosscap {

struct CurveClass {
    Word canonical_word;
    bool one_sided = false;
    bool separating = false;
    bool essential = false;
    bool mobius_bounding = false;
    bool surviving = false;
    bool puncture_peripheral = false;
    std::vector<int> homology;  // letter-parity vector (one-polygon schemes)

    bool two_sided() const { return !one_sided; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["word"] = word_str(canonical_word);
        j["one_sided"] = one_sided;
        j["separating"] = separating;
        j["essential"] = essential;
        j["mobius_bounding"] = mobius_bounding;
        j["surviving"] = surviving;
        j["puncture_peripheral"] = puncture_peripheral;
        return j;
    }
};

namespace detail {

// Does this boundary circle traverse its wall exactly once?
inline bool covers_once(const Overlay& OV, const Overlay::Circle& C, int wall) {
    int steps = 0;
    for (const auto& st : C.steps)
        if (OV.he_edge(st.he).wall == wall) ++steps;
    return steps == static_cast<int>(OV.wall_paths[wall].size());
}

}  // namespace detail

inline CurveClass classify(const CurveEmbedding& c, const MarkedSet& extra_marks = {}) {
    const SurfaceComplex& X = *c.X;
    Overlay ov(X, {Wall{&c, false, {}}}, extra_marks);

    CurveClass k;
    k.canonical_word = c.canonical_word();
    k.one_sided = !c.interior_loop && c.orientation_character() == 1;
    k.homology = c.parity_vector();
    k.separating = ov.regions.size() == 2;

    bool disk_unmarked = false, disk_one_mark = false, disk_marked = false;
    bool mobius_unmarked = false, mobius_marked = false;
    for (int r = 0; r < static_cast<int>(ov.regions.size()); ++r) {
        const auto& R = ov.regions[r];
        if (R.circles.size() != 1) continue;
        if (!detail::covers_once(ov, R.circles[0], 0)) continue;
        if (R.chi == 1) {
            if (R.marks.empty()) disk_unmarked = true;
            if (R.marks.size() == 1) disk_one_mark = true;
            if (!R.marks.empty()) disk_marked = true;
        }
        if (R.chi == 0 && !R.orientable) {
            if (R.marks.empty())
                mobius_unmarked = true;
            else
                mobius_marked = true;
        }
    }
    k.puncture_peripheral = disk_one_mark;
    k.mobius_bounding = !k.one_sided && mobius_unmarked;
    k.essential = !disk_unmarked && !disk_one_mark && !mobius_unmarked;
    k.surviving = k.essential && !disk_marked && !mobius_marked;
    return k;
}

// Isotopy-class equality rel the marked points.  Two-sided pairs: disjoint
// realizations cobounding an unmarked annulus; one-sided pairs reduce to
// their regular-neighborhood boundaries; mixed sidedness never matches.
inline bool same_class(const CurveEmbedding& a, const CurveEmbedding& b,
                       const MarkedSet& extra_marks = {}) {
    const bool osa = !a.interior_loop && a.orientation_character() == 1;
    const bool osb = !b.interior_loop && b.orientation_character() == 1;
    if (osa != osb) return false;
    if (osa)
        return same_class(mobius_boundary(a, extra_marks), mobius_boundary(b, extra_marks),
                          extra_marks);
    if (a.same_point_set(b)) return true;
    // quick invariant screens
    if (a.X->homology_usable() && a.parity_vector() != b.parity_vector()) return false;
    CurveEmbedding bb = b;
    if (intersection_number(a, b, extra_marks) != 0) return false;
    // disjoint realization
    bool generic = true;
    try {
        Overlay probe(*a.X, {Wall{&a, false, {}}, Wall{&bb, false, {}}}, extra_marks);
    } catch (const TopologyError&) {
        generic = false;
    }
    if (!generic) bb = push_off(b, true, extra_marks);
    auto mp = minimal_position(a, bb, extra_marks);
    Overlay ov(*a.X, {Wall{&mp.a, false, {}}, Wall{&mp.b, false, {}}}, extra_marks);
    if (ov.crossings(0, 1) != 0) return false;
    for (const auto& R : ov.regions) {
        if (R.chi != 0 || !R.orientable || !R.marks.empty()) continue;
        if (R.circles.size() != 2) continue;
        const auto &c0 = R.circles[0], &c1 = R.circles[1];
        if (c0.walls.size() != 1 || c1.walls.size() != 1) continue;
        if (*c0.walls.begin() == *c1.walls.begin()) continue;
        if (detail::covers_once(ov, c0, *c0.walls.begin()) &&
            detail::covers_once(ov, c1, *c1.walls.begin()))
            return true;
    }
    return false;
}

// Regular-neighborhood boundary as a class operation (one-sided input only).
inline CurveEmbedding neighborhood_boundary(const CurveEmbedding& c,
                                            const MarkedSet& extra_marks = {}) {
    return mobius_boundary(c, extra_marks);
}

// Core of the Möbius band bounded by c.  Inverse of neighborhood_boundary:
// word-halving candidates first, then a bounded search over one-sided words.
inline CurveEmbedding mobius_core(const CurveEmbedding& c, const MarkedSet& extra_marks = {}) {
    const SurfaceComplex& X = *c.X;
    CurveClass k = classify(c, extra_marks);
    if (!k.mobius_bounding)
        throw err(TopologyError::Kind::NotMobiusBounding,
                  "curve does not bound a Möbius band");
    auto try_candidate = [&](const Word& w) -> std::optional<CurveEmbedding> {
        CurveEmbedding cand;
        try {
            cand = embed_word(X, w);
        } catch (const TopologyError&) {
            return std::nullopt;
        }
        if (cand.orientation_character() != 1) return std::nullopt;
        try {
            if (same_class(mobius_boundary(cand, extra_marks), c, extra_marks)) return cand;
        } catch (const TopologyError&) {
        }
        return std::nullopt;
    };
    if (auto half = cyclic_square_root(k.canonical_word)) {
        if (auto r = try_candidate(*half)) return *r;
    }
    // bounded brute search, shortest words first
    const int L = static_cast<int>(k.canonical_word.size()) / 2 + 1;
    std::vector<Word> words;
    std::function<void(Word&)> gen = [&](Word& w) {
        if (!w.empty() && cyclically_reduced(w) && canonical_cyclic(w) == w) words.push_back(w);
        if (static_cast<int>(w.size()) >= L) return;
        for (int l = 0; l < X.n_labels; ++l)
            for (int s : {+1, -1}) {
                w.push_back({l, s});
                if (w.size() < 2 || w[w.size() - 2] != w.back().inverse()) gen(w);
                w.pop_back();
            }
    };
    Word w;
    gen(w);
    std::sort(words.begin(), words.end(), [](const Word& u, const Word& v) {
        if (u.size() != v.size()) return u.size() < v.size();
        return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
    });
    for (const Word& cand : words)
        if (auto r = try_candidate(cand)) return *r;
    throw err(TopologyError::Kind::SearchExhausted,
              "no Möbius core found within the word bound");
}

// ---- certificates -------------------------------------------------------------

inline bool is_primitive(const CurveClass& k) {
    return !k.canonical_word.empty() && !cyclic_proper_power(k.canonical_word);
}

struct FillingReport {
    bool filling = false;
    bool realization_level = true;  // certified on one minimal-position realization
    int regions = 0;
    int non_disk_regions = 0;
    nlohmann::json to_json() const {
        return {{"filling", filling},
                {"realization_level", realization_level},
                {"regions", regions},
                {"non_disk_regions", non_disk_regions}};
    }
};

// Filling check for a system of pairwise-transverse embedded curves: after
// putting the system in pairwise minimal position, every complementary
// region must be a disk.
inline FillingReport is_filling(const std::vector<CurveEmbedding>& system,
                                const MarkedSet& extra_marks = {}) {
    if (system.empty()) return {};
    const SurfaceComplex& X = *system[0].X;
    std::vector<CurveEmbedding> sys = augment_minimal_position({}, system, extra_marks);
    std::vector<Wall> ws;
    for (const auto& c : sys) ws.push_back(Wall{&c, false, {}});
    Overlay ov(X, ws, extra_marks);
    FillingReport rep;
    rep.regions = static_cast<int>(ov.regions.size());
    for (const auto& R : ov.regions)
        if (!(R.chi == 1 && R.circles.size() == 1)) rep.non_disk_regions++;
    rep.filling = rep.non_disk_regions == 0;
    return rep;
}

inline bool pairwise_nonhomotopic(const std::vector<CurveEmbedding>& system,
                                  const MarkedSet& extra_marks = {}) {
    for (std::size_t i = 0; i < system.size(); ++i)
        for (std::size_t j = i + 1; j < system.size(); ++j)
            if (same_class(system[i], system[j], extra_marks)) return false;
    return true;
}

}  // namespace crosscap
