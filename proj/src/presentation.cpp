#include "gbg/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gbg/smith.hpp"

namespace gbg {

std::string Presentation::wordToText(const Word& w) const {
    std::ostringstream out;
    bool first = true;
    for (int letter : w) {
        if (!first) out << " ";
        first = false;
        out << generators[genOf(letter)].name;
        if (letter < 0) out << "^-1";
    }
    return out.str();
}

Word Presentation::wordFromText(const std::string& text) const {
    std::map<std::string, int> byName;
    for (std::size_t i = 0; i < generators.size(); ++i)
        byName[generators[i].name] = static_cast<int>(i);
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int exponent = +1;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            exponent = -1;
            tok.resize(tok.size() - 3);
        }
        auto it = byName.find(tok);
        if (it == byName.end()) throw std::invalid_argument("unknown generator '" + tok + "'");
        w.push_back(letterOf(it->second, exponent));
    }
    return w;
}

std::string Presentation::toText() const {
    std::ostringstream out;
    for (const auto& g : generators) out << "gen " << g.name << "\n";
    for (const auto& r : relators) out << "rel " << wordToText(r) << "\n";
    return out.str();
}

Presentation Presentation::fromText(const std::string& text) {
    Presentation p;
    std::vector<std::string> relatorLines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "gen") {
            std::string name;
            if (!(ls >> name)) throw std::invalid_argument("gen line without a name");
            p.generators.push_back({name, std::nullopt});
        } else if (kind == "rel") {
            std::string rest;
            std::getline(ls, rest);
            relatorLines.push_back(rest);
        } else {
            throw std::invalid_argument("unknown presentation line '" + kind + "'");
        }
    }
    for (const auto& r : relatorLines) p.relators.push_back(p.wordFromText(r));
    return p;
}

TietzeResult tietzeSimplify(const Presentation& input) {
    // Working state: live generators with expressions of the original ones.
    std::size_t genCount = input.generators.size();
    std::vector<Word> dictionary(genCount);
    for (std::size_t i = 0; i < genCount; ++i)
        dictionary[i] = {letterOf(static_cast<int>(i), +1)};
    std::vector<char> alive(genCount, 1);
    std::vector<Word> relators = input.relators;

    auto substituteIn = [](const Word& w, int gen, const Word& replacement) {
        Word out;
        for (int letter : w) {
            if (genOf(letter) == gen) {
                Word part = letter > 0 ? replacement : inverseWord(replacement);
                out.insert(out.end(), part.begin(), part.end());
            } else {
                out.push_back(letter);
            }
        }
        return freeReduce(out);
    };

    bool changed = true;
    while (changed) {
        changed = false;

        // Reduce, drop trivial, drop duplicate relators (up to rotation/inverse).
        std::vector<Word> kept;
        std::set<Word> seen;
        for (const auto& r : relators) {
            Word c = cyclicReduce(r);
            if (c.empty()) continue;
            Word key = std::min(canonicalCyclic(c), canonicalCyclic(inverseWord(c)));
            if (seen.insert(key).second) kept.push_back(c);
        }
        if (kept != relators) {
            relators = std::move(kept);
            changed = true;
        }

        // Eliminate a generator occurring exactly once in some relator.
        int pickRel = -1, pickGen = -1;
        for (std::size_t ri = 0; ri < relators.size() && pickRel < 0; ++ri) {
            std::map<int, int> occurrences;
            for (int letter : relators[ri]) ++occurrences[genOf(letter)];
            for (const auto& [gen, count] : occurrences)
                if (count == 1) {
                    pickRel = static_cast<int>(ri);
                    pickGen = gen;
                    break;
                }
        }
        if (pickRel >= 0) {
            // relator = p g^s q  =>  g^s = p^-1 q^-1.
            const Word& r = relators[pickRel];
            std::size_t pos = 0;
            while (genOf(r[pos]) != pickGen) ++pos;
            Word p(r.begin(), r.begin() + pos);
            Word q(r.begin() + pos + 1, r.end());
            Word value = concatWords(inverseWord(p), inverseWord(q));
            if (r[pos] < 0) value = inverseWord(value);
            value = freeReduce(value);

            relators.erase(relators.begin() + pickRel);
            for (auto& rel : relators) rel = substituteIn(rel, pickGen, value);
            for (auto& expr : dictionary) expr = substituteIn(expr, pickGen, value);
            alive[pickGen] = 0;
            changed = true;
        }
    }

    // Reindex surviving generators.
    std::vector<int> newIndex(genCount, -1);
    TietzeResult out;
    for (std::size_t i = 0; i < genCount; ++i) {
        if (!alive[i]) continue;
        newIndex[i] = static_cast<int>(out.presentation.generators.size());
        out.presentation.generators.push_back(input.generators[i]);
    }
    auto reindexWord = [&](const Word& w) {
        Word r;
        for (int letter : w) r.push_back(letterOf(newIndex[genOf(letter)], expOf(letter)));
        return r;
    };
    for (const auto& r : relators) out.presentation.relators.push_back(reindexWord(r));
    out.dictionary.reserve(genCount);
    for (const auto& expr : dictionary) out.dictionary.push_back(reindexWord(expr));
    out.presentation.base = input.base;
    return out;
}

AbelianInvariants abelianization(const Presentation& p) {
    IntMatrix m(static_cast<int>(p.relators.size()),
                static_cast<int>(p.generators.size()));
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (int letter : p.relators[r])
            m.at(static_cast<int>(r), genOf(letter)) += expOf(letter);
    auto snf = smithNormalForm(m);
    AbelianInvariants out;
    long long nonzero = 0;
    for (const auto& d : snf.diagonal) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.torsion.push_back(d.convert_to<long long>());
    }
    out.rank = static_cast<long long>(p.generators.size()) - nonzero;
    return out;
}

std::string AbelianInvariants::toText() const {
    std::ostringstream out;
    out << "rank " << rank;
    if (!torsion.empty()) {
        out << ", torsion";
        for (long long t : torsion) out << " " << t;
    }
    return out.str();
}

Motion evaluateWord(const Presentation& p, const Word& w) {
    if (!p.base) throw std::invalid_argument("presentation has no base configuration");
    Motion motion = constantMotion(*p.base);
    for (int letter : w) {
        const auto& gen = p.generators[genOf(letter)];
        if (!gen.witness) throw std::invalid_argument("generator " + gen.name + " has no witness");
        motion.append(letter > 0 ? *gen.witness : gen.witness->reversed());
    }
    return motion;
}

}  // namespace gbg
