#pragma once

#include <utility>
#include <vector>

namespace lqt {

// All graded sign bookkeeping lives here; no other module computes signs
// from scratch.

// Sign of a permutation given as the image sequence perm[0..k).
inline int perm_sign(const std::vector<int>& perm) {
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) s = -s;
    return s;
}

// Koszul sign of reordering graded letters: out[j] = in[perm[j]]. Each
// inversion of letters with degrees d1, d2 contributes (-1)^(d1*d2).
inline int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] &&
                (degrees[static_cast<std::size_t>(perm[i])] &
                 degrees[static_cast<std::size_t>(perm[j])] & 1))
                s = -s;
    return s;
}

// Sorts degree-1 letters (identified by an integer key) into strictly
// increasing order. Returns the antisymmetry sign, or 0 when a key repeats.
inline int sort_antisym(std::vector<int>& letters) {
    int sign = 1;
    for (std::size_t i = 1; i < letters.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && letters[j] < letters[j - 1]) {
            std::swap(letters[j], letters[j - 1]);
            sign = -sign;
            --j;
        }
    }
    for (std::size_t i = 1; i < letters.size(); ++i)
        if (letters[i] == letters[i - 1]) return 0;
    return sign;
}

// Sorts graded letters (degree, key) by (degree, key) with Koszul swap
// signs. Returns 0 when an odd-degree letter repeats; even repeats stay.
inline int sort_graded(std::vector<std::pair<int, int>>& letters) {
    int sign = 1;
    for (std::size_t i = 1; i < letters.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && letters[j] < letters[j - 1]) {
            if (letters[j].first & letters[j - 1].first & 1) sign = -sign;
            std::swap(letters[j], letters[j - 1]);
            --j;
        }
    }
    for (std::size_t i = 1; i < letters.size(); ++i)
        if (letters[i] == letters[i - 1] && (letters[i].first & 1)) return 0;
    return sign;
}

// Sign of the unshuffle that lists the positions in `parts` block by block
// (each block ascending). Positions are 0-based and partition 0..p-1; all
// letters have degree 1.
inline int unshuffle_sign(const std::vector<std::vector<int>>& parts) {
    std::vector<int> seq;
    for (const auto& part : parts) seq.insert(seq.end(), part.begin(), part.end());
    return perm_sign(seq);
}

}  // namespace lqt
