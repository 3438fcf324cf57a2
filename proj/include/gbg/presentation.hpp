#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbg/motion.hpp"
#include "gbg/word.hpp"

namespace gbg {

struct Generator {
    std::string name;
    std::optional<Motion> witness;  // loop at the presentation base, when known
};

struct Presentation {
    std::vector<Generator> generators;
    std::vector<Word> relators;
    std::optional<VertexConfig> base;

    std::string toText() const;
    static Presentation fromText(const std::string& text);

    std::string wordToText(const Word& w) const;
    Word wordFromText(const std::string& text) const;
};

struct TietzeResult {
    Presentation presentation;
    // dictionary[i] = expression of original generator i in the new generators.
    std::vector<Word> dictionary;
};

TietzeResult tietzeSimplify(const Presentation& p);

struct AbelianInvariants {
    long long rank = 0;
    std::vector<long long> torsion;  // coefficients > 1, in divisibility order

    bool operator==(const AbelianInvariants&) const = default;
    std::string toText() const;
};

AbelianInvariants abelianization(const Presentation& p);

// Concatenates witness loops along w; requires witnesses on every generator used.
Motion evaluateWord(const Presentation& p, const Word& w);

}  // namespace gbg
