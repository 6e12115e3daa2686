#pragma once

// Chord realization of crossing words.  A cyclically reduced word is
// realizable by an embedded curve iff some assignment of crossing-parameter
// orders makes all polygon chords pairwise non-interleaved along the
// boundary; the search over per-label orderings is exhaustive, so failure
// certifies that the word admits no embedded representative.

#include "crosscap/curve.hpp"
#include "crosscap/surface.hpp"
#include "crosscap/word.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace crosscap {

namespace detail {

// Cyclic boundary coordinate of (side, arrow parameter t) within its polygon:
// local edge index plus ccw position along the edge.
inline Rat boundary_coord(const SurfaceComplex& X, int side, const Rat& t) {
    const auto& sd = X.sides[side];
    return Rat(sd.idx) + (sd.sign > 0 ? t : 1 - t);
}

inline bool cyclic_inside(const Rat& p, const Rat& lo, const Rat& hi) {
    if (lo < hi) return lo < p && p < hi;
    return p > lo || p < hi;
}

// Closed chords [a1,a2], [b1,b2] on the circle of boundary coordinates cross
// iff their endpoint pairs interleave.
inline bool chords_interleave(const Rat& a1, const Rat& a2, const Rat& b1, const Rat& b2) {
    return cyclic_inside(b1, a1, a2) != cyclic_inside(b2, a1, a2);
}

}  // namespace detail

// Realize `word` as an embedded chord curve avoiding the scheme's punctures
// and any extra marked points.  Throws NotReduced for words that cancel,
// NotSimple when no embedded realization exists.
inline CurveEmbedding embed_word(const SurfaceComplex& X, const Word& word,
                                 const MarkedSet& extra_marks) {
    X.require_geometric();
    if (word.empty())
        throw err(TopologyError::Kind::NotReduced, "empty word is the trivial loop");
    for (const Letter& l : word) X.exit_side(l);  // validates labels
    if (cyclic_reduce(word).size() != word.size())
        throw err(TopologyError::Kind::NotReduced,
                  "word is not cyclically reduced: " + word_str(word));

    const int m = static_cast<int>(word.size());
    std::vector<int> exit_side(m), enter_side(m), chart(m);
    for (int k = 0; k < m; ++k) exit_side[k] = X.exit_side(word[k]);
    for (int k = 0; k < m; ++k) {
        enter_side[k] = X.partner(exit_side[(k - 1 + m) % m]);
        chart[k] = X.sides[enter_side[k]].poly;
        if (X.sides[exit_side[k]].poly != chart[k])
            throw err(TopologyError::Kind::NotSimple,
                      "word's chart sequence is inconsistent: " + word_str(word));
    }

    // Events grouped by label; each label's events receive a permutation of
    // parameter ranks.
    std::vector<std::vector<int>> events_of_label(X.n_labels);
    for (int k = 0; k < m; ++k) events_of_label[X.sides[exit_side[k]].label].push_back(k);
    std::vector<int> active_labels;
    for (int l = 0; l < X.n_labels; ++l)
        if (!events_of_label[l].empty()) active_labels.push_back(l);

    std::vector<std::vector<int>> perm(active_labels.size());
    for (std::size_t i = 0; i < active_labels.size(); ++i) {
        perm[i].resize(events_of_label[active_labels[i]].size());
        std::iota(perm[i].begin(), perm[i].end(), 0);
    }

    // Parameter offsets tried when a chord hits a marked point.
    static const long offsets_den[] = {0, 101, 103, 107, 109, 113};

    std::vector<Rat> t_of(m);
    auto try_assignment = [&]() -> bool {
        for (long od : offsets_den) {
            for (std::size_t i = 0; i < active_labels.size(); ++i) {
                const auto& ev = events_of_label[active_labels[i]];
                const int cnt = static_cast<int>(ev.size());
                for (int j = 0; j < cnt; ++j) {
                    Rat t = Rat(perm[i][j] + 1, cnt + 1);
                    if (od) t += Rat(1, od);
                    t_of[ev[j]] = t;
                }
            }
            bool ok = true;
            for (int k = 0; k < m && ok; ++k)
                if (!(t_of[k] > 0 && t_of[k] < 1)) ok = false;
            if (!ok) continue;
            // Interleave test for chords in the same chart.
            std::vector<std::pair<Rat, Rat>> chord(m);
            for (int k = 0; k < m; ++k) {
                chord[k] = {detail::boundary_coord(X, enter_side[k], t_of[(k - 1 + m) % m]),
                            detail::boundary_coord(X, exit_side[k], t_of[k])};
            }
            for (int a = 0; a < m && ok; ++a)
                for (int b = a + 1; b < m && ok; ++b) {
                    if (chart[a] != chart[b]) continue;
                    if (detail::chords_interleave(chord[a].first, chord[a].second,
                                                  chord[b].first, chord[b].second))
                        ok = false;
                }
            if (!ok) continue;
            // Marked points must stay off every chord.
            for (int k = 0; k < m && ok; ++k) {
                const Pt a = X.side_point(enter_side[k], t_of[(k - 1 + m) % m]);
                const Pt b = X.side_point(exit_side[k], t_of[k]);
                for (const auto& mp : X.punctures) {
                    if (mp.poly != chart[k]) continue;
                    if (on_segment_closed(a, b, mp.p)) {
                        ok = false;
                        break;
                    }
                }
                for (const auto& mp : extra_marks) {
                    if (!ok || mp.poly != chart[k]) continue;
                    if (on_segment_closed(a, b, mp.p)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        }
        return false;
    };

    // Odometer over per-label permutations, lexicographic, first feasible wins.
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == active_labels.size()) return try_assignment();
        std::vector<int>& p = perm[i];
        std::sort(p.begin(), p.end());
        do {
            if (search(i + 1)) return true;
        } while (std::next_permutation(p.begin(), p.end()));
        return false;
    };
    if (!search(0))
        throw err(TopologyError::Kind::NotSimple,
                  "word admits no embedded chord realization: " + word_str(word));

    std::vector<Pass> passes(m);
    for (int k = 0; k < m; ++k) {
        Pass& p = passes[k];
        p.poly = chart[k];
        p.enter_side = enter_side[k];
        p.enter_t = t_of[(k - 1 + m) % m];
        p.exit_side = exit_side[k];
        p.exit_t = t_of[k];
        p.pts = {X.side_point(p.enter_side, p.enter_t), X.side_point(p.exit_side, p.exit_t)};
    }
    CurveEmbedding c(X, std::move(passes));
    c.validate();
    return c;
}

inline CurveEmbedding embed_word(const SurfaceComplex& X, const Word& word) {
    return embed_word(X, word, MarkedSet{});
}

inline CurveEmbedding embed_word(const SurfaceComplex& X, const std::string& word,
                                 const MarkedSet& extra_marks = {}) {
    return embed_word(X, parse_word(word), extra_marks);
}

// A transverse second copy of a word curve: same word, crossing parameters
// nudged by delta (arrow-consistent, so the gluing stays valid).
inline CurveEmbedding embed_word_shifted(const SurfaceComplex& X, const Word& word,
                                         const Rat& delta) {
    CurveEmbedding c = embed_word(X, word);
    for (Pass& p : c.passes) {
        p.enter_t += delta;
        p.exit_t += delta;
        p.pts.front() = X.side_point(p.enter_side, p.enter_t);
        p.pts.back() = X.side_point(p.exit_side, p.exit_t);
    }
    c.validate();
    return c;
}

}  // namespace crosscap
