#include "gbg/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "gbg/smith.hpp"

namespace gbg {

OraclePresentation pi1Presentation(const CubeComplex& c, int component) {
    auto componentOf = c.componentOf0();
    if (component < 0 || component >= c.componentCount())
        throw std::invalid_argument("unknown component");

    OraclePresentation out;
    out.component = component;
    int zeroCount = static_cast<int>(c.cells0().size());
    int base = -1;
    for (int i = 0; i < zeroCount && base < 0; ++i)
        if (componentOf[i] == component) base = i;
    out.base0Cell = base;

    std::vector<std::vector<std::pair<int, int>>> adjacency(zeroCount);  // (other, 1-cell)
    for (std::size_t e = 0; e < c.boundary1().size(); ++e) {
        auto [a, b] = c.boundary1()[e];
        adjacency[a].push_back({b, static_cast<int>(e)});
        if (b != a) adjacency[b].push_back({a, static_cast<int>(e)});
    }
    for (auto& adj : adjacency) std::sort(adj.begin(), adj.end());

    std::vector<char> treeEdge(c.cells1().size(), 0);
    out.treeParentEdge.assign(zeroCount, -1);
    std::vector<char> seen(zeroCount, 0);
    seen[base] = 1;
    std::deque<int> queue{base};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [w, e] : adjacency[v]) {
            if (seen[w]) continue;
            seen[w] = 1;
            treeEdge[e] = 1;
            out.treeParentEdge[w] = e;
            queue.push_back(w);
        }
    }

    std::map<int, int> genOfOneCell;
    for (std::size_t e = 0; e < c.cells1().size(); ++e) {
        auto [a, b] = c.boundary1()[e];
        if (componentOf[a] != component || treeEdge[e]) continue;
        genOfOneCell[static_cast<int>(e)] = static_cast<int>(out.generatorOneCells.size());
        out.generatorOneCells.push_back(static_cast<int>(e));
        out.presentation.generators.push_back(
            {"x" + std::to_string(e), std::nullopt});
    }

    for (const auto& sides : c.boundary2()) {
        int corner = c.boundary1()[sides[0].oneCell].first;
        if (componentOf[corner] != component) continue;
        Word relator;
        for (const auto& side : sides) {
            auto it = genOfOneCell.find(side.oneCell);
            if (it == genOfOneCell.end()) continue;  // tree edge
            relator.push_back(letterOf(it->second, side.dir));
        }
        out.presentation.relators.push_back(std::move(relator));
    }
    return out;
}

AbelianInvariants oracleH1(const CubeComplex& c, int component) {
    return abelianization(pi1Presentation(c, component).presentation);
}

std::vector<std::pair<int, int>> motionToOneCells(const Graph& g, const CubeComplex& c,
                                                  const Motion& motion) {
    std::vector<std::pair<int, int>> steps;
    Subgraph full = g.fullSubgraph();
    for (std::size_t i = 0; i + 1 < motion.frames.size(); ++i) {
        const auto& a = motion.frames[i];
        const auto& b = motion.frames[i + 1];
        std::vector<int> gone, came;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(gone));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(came));
        if (gone.size() != 1 || came.size() != 1)
            throw std::invalid_argument("motion step is not a single move");
        int u = gone[0], w = came[0];
        int e = g.edgeBetween(u, w, full);
        if (e < 0) throw std::invalid_argument("motion step without an edge");
        CubeCell cell;
        for (int v : a)
            if (v != u) cell.push_back(v);
        cell.push_back(g.cellOfEdge(e));
        std::sort(cell.begin(), cell.end());
        int oneCell = c.index1(cell);
        if (oneCell < 0) throw std::invalid_argument("motion step leaves the complex");
        int dir = g.edge(e).u == u ? +1 : -1;
        steps.push_back({oneCell, dir});
    }
    return steps;
}

std::vector<long long> loopEdgeVector(const OraclePresentation& p, const CubeComplex& c,
                                      const std::vector<std::pair<int, int>>& steps) {
    (void)c;
    std::map<int, int> genOfOneCell;
    for (std::size_t i = 0; i < p.generatorOneCells.size(); ++i)
        genOfOneCell[p.generatorOneCells[i]] = static_cast<int>(i);
    std::vector<long long> vec(p.generatorOneCells.size(), 0);
    for (auto [oneCell, dir] : steps) {
        auto it = genOfOneCell.find(oneCell);
        if (it != genOfOneCell.end()) vec[it->second] += dir;
    }
    return vec;
}

bool loopIsH1Trivial(const CubeComplex& c, int component,
                     const std::vector<std::pair<int, int>>& steps) {
    auto p = pi1Presentation(c, component);
    auto vec = loopEdgeVector(p, c, steps);

    // Trivial iff the exponent vector lies in the row lattice of the relator
    // matrix M. With U M V = D: v = x M has a solution iff (v V) is divisible
    // entrywise by the diagonal of D (0 where D is 0).
    const auto& pres = p.presentation;
    IntMatrix m(static_cast<int>(pres.relators.size()),
                static_cast<int>(pres.generators.size()));
    for (std::size_t r = 0; r < pres.relators.size(); ++r)
        for (int letter : pres.relators[r])
            m.at(static_cast<int>(r), genOf(letter)) += expOf(letter);
    auto snf = smithNormalForm(m);

    int cols = static_cast<int>(pres.generators.size());
    std::vector<BigInt> w(cols, 0);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < cols; ++i)
            if (vec[i] != 0) w[j] += BigInt(vec[i]) * snf.v.at(i, j);
    for (int j = 0; j < cols; ++j) {
        BigInt d = j < static_cast<int>(snf.diagonal.size()) ? snf.diagonal[j] : BigInt(0);
        if (d == 0) {
            if (w[j] != 0) return false;
        } else if (w[j] % d != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace gbg
