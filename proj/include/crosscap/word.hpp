#pragma once

// Crossing words: cyclic words in the side-pair labels of a gluing scheme.
// Letter (label, +1) is a crossing that exits the first occurrence of the
// label in the side word; (label, -1) exits the second occurrence.

#include "crosscap/rational.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace crosscap {

struct Letter {
    int label = 0;
    int sign = +1;

    bool operator==(const Letter& o) const { return label == o.label && sign == o.sign; }
    bool operator!=(const Letter& o) const { return !(*this == o); }

    Letter inverse() const { return {label, -sign}; }

    // Total order used for canonical forms: a1 < a1^-1 < a2 < a2^-1 < ...
    int key() const { return 2 * label + (sign < 0 ? 1 : 0); }
    bool operator<(const Letter& o) const { return key() < o.key(); }
};

using Word = std::vector<Letter>;

inline std::string letter_str(const Letter& l) {
    std::string s = "a" + std::to_string(l.label + 1);
    if (l.sign < 0) s += "-";
    return s;
}

inline std::string word_str(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += letter_str(w[i]);
    }
    return s;
}

// Accepts tokens "a1", "a1-", "a1^-1" separated by spaces (case-insensitive 'a').
inline Word parse_word(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::string t = tok;
        int sign = +1;
        if (t.size() >= 4 && t.substr(t.size() - 3) == "^-1") {
            sign = -1;
            t = t.substr(0, t.size() - 3);
        } else if (t.back() == '-' || t.back() == '\'') {
            sign = -1;
            t.pop_back();
        }
        if (t.size() < 2 || (t[0] != 'a' && t[0] != 'A'))
            throw err(TopologyError::Kind::InvalidInput, "bad word token: " + tok);
        int label = 0;
        try {
            label = std::stoi(t.substr(1)) - 1;
        } catch (...) {
            throw err(TopologyError::Kind::InvalidInput, "bad word token: " + tok);
        }
        if (label < 0) throw err(TopologyError::Kind::InvalidInput, "bad word token: " + tok);
        w.push_back({label, sign});
    }
    return w;
}

inline Word word_inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = l.inverse();
    return r;
}

inline bool cyclically_reduced(const Word& w) {
    const std::size_t n = w.size();
    if (n < 2) return true;
    for (std::size_t i = 0; i < n; ++i)
        if (w[i] == w[(i + 1) % n].inverse()) return false;
    return true;
}

// Full cyclic free reduction (repeated cancellation of adjacent inverse pairs,
// wrapping around the cycle).
inline Word cyclic_reduce(Word w) {
    bool changed = true;
    while (changed && w.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < w.size() && w.size() >= 2; ++i) {
            const std::size_t j = (i + 1) % w.size();
            if (w[i] == w[j].inverse()) {
                if (j > i) {
                    w.erase(w.begin() + j);
                    w.erase(w.begin() + i);
                } else {
                    w.erase(w.begin() + i);
                    w.erase(w.begin() + j);
                }
                changed = true;
                break;
            }
        }
    }
    return w;
}

// Lexicographically minimal rotation of w and of its inverse.
inline Word canonical_cyclic(const Word& w) {
    if (w.empty()) return w;
    auto min_rot = [](const Word& u) {
        Word best = u;
        Word cur = u;
        for (std::size_t i = 1; i < u.size(); ++i) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end()))
                best = cur;
        }
        return best;
    };
    Word a = min_rot(w);
    Word b = min_rot(word_inverse(w));
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()) ? a : b;
}

// True when w is a proper power v^k (k >= 2) as a cyclic word.
inline bool cyclic_proper_power(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = (w[i] == w[(i + p) % n]);
        if (ok) return true;
    }
    return false;
}

// If w (already canonical) equals u*u as a cyclic word, return u.
inline std::optional<Word> cyclic_square_root(const Word& w) {
    const std::size_t n = w.size();
    if (n == 0 || n % 2 != 0) return std::nullopt;
    Word cur = w;
    for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < n / 2 && ok; ++i) ok = (cur[i] == cur[i + n / 2]);
        if (ok) return Word(cur.begin(), cur.begin() + static_cast<long>(n / 2));
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
    return std::nullopt;
}

}  // namespace crosscap
