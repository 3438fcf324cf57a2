#include "gbg/word.hpp"

#include <algorithm>

namespace gbg {

Word freeReduce(const Word& w) {
    Word out;
    for (int letter : w) {
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word inverseWord(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& letter : out) letter = -letter;
    return out;
}

Word concatWords(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word conjugateWord(const Word& k, const Word& a) {
    return concatWords(concatWords(k, a), inverseWord(k));
}

Word cyclicReduce(const Word& w) {
    Word r = freeReduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + lo, r.begin() + hi);
}

Word canonicalCyclic(const Word& w) {
    Word r = cyclicReduce(w);
    if (r.empty()) return r;
    Word best = r;
    Word rot = r;
    for (std::size_t i = 1; i < r.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        best = std::min(best, rot);
    }
    return best;
}

namespace {

bool matchesCommutator(const Word& r) {
    // r == u v u^-1 v^-1 literally, with |u| = p, |v| = q nonempty.
    std::size_t len = r.size();
    if (len < 4 || len % 2 != 0) return false;
    for (std::size_t p = 1; p < len / 2; ++p) {
        std::size_t q = len / 2 - p;
        bool ok = true;
        for (std::size_t i = 0; i < p && ok; ++i)
            if (r[p + q + i] != -r[p - 1 - i]) ok = false;
        for (std::size_t i = 0; i < q && ok; ++i)
            if (r[2 * p + q + i] != -r[p + q - 1 - i]) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool isCommutatorRelator(const Word& w) {
    Word r = freeReduce(w);
    if (r.empty()) return false;
    for (int pass = 0; pass < 2; ++pass) {
        Word rot = r;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (matchesCommutator(rot)) return true;
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
        r = inverseWord(r);
    }
    return false;
}

}  // namespace gbg
