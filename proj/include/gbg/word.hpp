#pragma once

#include <vector>

namespace gbg {

// A word in a free group: letter k > 0 is generator k-1, letter -k its inverse.
using Word = std::vector<int>;

inline int letterOf(int gen, int exponent) { return exponent > 0 ? gen + 1 : -(gen + 1); }
inline int genOf(int letter) { return (letter > 0 ? letter : -letter) - 1; }
inline int expOf(int letter) { return letter > 0 ? +1 : -1; }

Word freeReduce(const Word& w);
Word inverseWord(const Word& w);
Word concatWords(const Word& a, const Word& b);
// Conjugate a by k: k a k^-1.
Word conjugateWord(const Word& k, const Word& a);
// Cyclically reduced form (freely reduces first).
Word cyclicReduce(const Word& w);
// Canonical representative among all rotations of the cyclic reduction.
Word canonicalCyclic(const Word& w);

bool isCommutatorRelator(const Word& w);

}  // namespace gbg
