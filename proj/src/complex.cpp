#include "gbg/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gbg/dsu.hpp"

namespace gbg {

CubeComplex CubeComplex::enumerate(const Graph& g, const Subgraph& s, int n, bool ordered,
                                   int maxStoredDim, bool countAll) {
    CubeComplex cx;
    cx.ordered_ = ordered;
    cx.n_ = n;
    cx.fVector_.assign(n + 1, 0);
    if (n <= 0) {
        // The 0-robot space is a single empty configuration.
        cx.fVector_ = {1};
        cx.cells0_.push_back({});
        cx.index0_[{}] = 0;
        return cx;
    }

    // Candidate cells in canonical encoded order: vertices first, then edges.
    std::vector<int> candidates;
    for (int v = 0; v < g.numVertices(); ++v)
        if (s.vertex[v]) candidates.push_back(g.cellOfVertex(v));
    for (int e = 0; e < g.numEdges(); ++e)
        if (s.edge[e]) candidates.push_back(g.cellOfEdge(e));

    auto closure = [&](int cell, int out[2]) {
        if (g.isVertexCell(cell)) {
            out[0] = cell;
            out[1] = -1;
        } else {
            auto ends = g.edge(g.edgeOfCell(cell));
            out[0] = ends.u;
            out[1] = ends.v == ends.u ? -1 : ends.v;
        }
    };

    std::vector<char> occupied(g.numVertices(), 0);
    CubeCell chosen;
    long long permCount = 1;
    for (int k = 2; k <= n; ++k) permCount *= k;

    std::vector<CubeCell> storedUnordered[3];

    std::function<void(std::size_t, int)> recurse = [&](std::size_t from, int edgeCount) {
        if (static_cast<int>(chosen.size()) == n) {
            cx.fVector_[edgeCount] += ordered ? permCount : 1;
            if (edgeCount <= maxStoredDim && edgeCount <= 2)
                storedUnordered[edgeCount].push_back(chosen);
            return;
        }
        int need = n - static_cast<int>(chosen.size());
        for (std::size_t i = from; i + need <= candidates.size() + 0u &&
                                   i < candidates.size();
             ++i) {
            int cell = candidates[i];
            bool isEdge = !g.isVertexCell(cell);
            int newEdgeCount = edgeCount + (isEdge ? 1 : 0);
            if (!countAll && newEdgeCount > maxStoredDim) {
                // Edges come after vertices; no later candidate helps either.
                break;
            }
            int cl[2];
            closure(cell, cl);
            if (occupied[cl[0]] || (cl[1] >= 0 && occupied[cl[1]])) continue;
            occupied[cl[0]] = 1;
            if (cl[1] >= 0) occupied[cl[1]] = 1;
            chosen.push_back(cell);
            recurse(i + 1, newEdgeCount);
            chosen.pop_back();
            occupied[cl[0]] = 0;
            if (cl[1] >= 0) occupied[cl[1]] = 0;
        }
    };
    recurse(0, 0);

    auto store = [&](int dim, std::vector<CubeCell> cells) {
        if (ordered) {
            std::vector<CubeCell> tuples;
            for (auto& c : cells) {
                CubeCell perm = c;
                do {
                    tuples.push_back(perm);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            std::sort(tuples.begin(), tuples.end());
            cells = std::move(tuples);
        }
        auto& target = dim == 0 ? cx.cells0_ : dim == 1 ? cx.cells1_ : cx.cells2_;
        target = std::move(cells);
    };
    for (int d = 0; d <= 2; ++d) store(d, std::move(storedUnordered[d]));

    for (std::size_t i = 0; i < cx.cells0_.size(); ++i) cx.index0_[cx.cells0_[i]] = i;
    for (std::size_t i = 0; i < cx.cells1_.size(); ++i) cx.index1_[cx.cells1_[i]] = i;
    cx.buildBoundaries(g);
    return cx;
}

void CubeComplex::buildBoundaries(const Graph& g) {
    auto substitute = [&](const CubeCell& cell, std::size_t pos, int value) {
        CubeCell out = cell;
        out[pos] = value;
        if (!ordered_) std::sort(out.begin(), out.end());
        return out;
    };

    boundary1_.clear();
    for (const auto& cell : cells1_) {
        std::size_t pos = 0;
        while (g.isVertexCell(cell[pos])) ++pos;
        auto ends = g.edge(g.edgeOfCell(cell[pos]));
        int a = index0(substitute(cell, pos, ends.u));
        int b = index0(substitute(cell, pos, ends.v));
        boundary1_.push_back({a, b});
    }

    boundary2_.clear();
    for (const auto& cell : cells2_) {
        std::size_t p = 0;
        while (g.isVertexCell(cell[p])) ++p;
        std::size_t q = p + 1;
        while (g.isVertexCell(cell[q])) ++q;
        auto e1 = g.edge(g.edgeOfCell(cell[p]));
        auto e2 = g.edge(g.edgeOfCell(cell[q]));
        // Square circuit through the four corner 0-cells:
        // (u1,u2) -> (v1,u2) -> (v1,v2) -> (u1,v2) -> (u1,u2).
        std::array<SquareSide, 4> sides;
        sides[0] = {index1(substitute(cell, q, e2.u)), +1};
        sides[1] = {index1(substitute(cell, p, e1.v)), +1};
        sides[2] = {index1(substitute(cell, q, e2.v)), -1};
        sides[3] = {index1(substitute(cell, p, e1.u)), -1};
        boundary2_.push_back(sides);
    }
}

int CubeComplex::index0(const CubeCell& c) const {
    auto it = index0_.find(c);
    return it == index0_.end() ? -1 : it->second;
}

int CubeComplex::index1(const CubeCell& c) const {
    auto it = index1_.find(c);
    return it == index1_.end() ? -1 : it->second;
}

long long CubeComplex::eulerCharacteristic() const {
    long long chi = 0;
    int sign = 1;
    for (long long f : fVector_) {
        chi += sign * f;
        sign = -sign;
    }
    return chi;
}

std::vector<int> CubeComplex::componentOf0() const {
    Dsu dsu(static_cast<int>(cells0_.size()));
    for (const auto& [a, b] : boundary1_) dsu.unite(a, b);
    std::vector<int> componentOf(cells0_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < cells0_.size(); ++i) {
        int root = dsu.find(static_cast<int>(i));
        if (componentOf[root] == -1) componentOf[root] = next++;
        componentOf[i] = componentOf[root];
    }
    return componentOf;
}

int CubeComplex::componentCount() const {
    auto comp = componentOf0();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

SurfaceReport CubeComplex::surfaceCheck() const {
    SurfaceReport report;
    report.euler = eulerCharacteristic();
    if (cells0_.empty() || cells2_.empty()) return report;
    for (std::size_t d = 3; d < fVector_.size(); ++d)
        if (fVector_[d] > 0) return report;  // higher-dimensional cells present
    if (componentCount() != 1) return report;

    // Every 1-cell must bound exactly two squares.
    std::vector<std::vector<std::pair<int, int>>> facesAt(cells1_.size());  // (face, dir)
    for (std::size_t f = 0; f < boundary2_.size(); ++f)
        for (const auto& side : boundary2_[f])
            facesAt[side.oneCell].push_back({static_cast<int>(f), side.dir});
    for (const auto& fs : facesAt)
        if (fs.size() != 2) return report;

    // Vertex links: occurrences of 1-cell ends at each 0-cell, joined by square
    // corners, must form one cycle per 0-cell.
    // Occurrence id: 2*oneCell + end (end 0 = boundary first, end 1 = second).
    std::vector<std::vector<int>> occsAt0(cells0_.size());
    for (std::size_t c = 0; c < boundary1_.size(); ++c) {
        occsAt0[boundary1_[c].first].push_back(static_cast<int>(2 * c));
        occsAt0[boundary1_[c].second].push_back(static_cast<int>(2 * c + 1));
    }
    std::vector<int> occDegree(2 * cells1_.size(), 0);
    Dsu linkDsu(static_cast<int>(2 * cells1_.size()));
    auto cornerOf = [&](const SquareSide& side, bool arriving) {
        // The occurrence of this side at the corner where it starts (arriving =
        // false) or ends (arriving = true) under its traversal direction.
        int end = side.dir == +1 ? (arriving ? 1 : 0) : (arriving ? 0 : 1);
        return 2 * side.oneCell + end;
    };
    std::vector<std::vector<int>> cornersAt0(cells0_.size());
    for (const auto& sides : boundary2_) {
        for (int k = 0; k < 4; ++k) {
            const auto& in = sides[k];
            const auto& out = sides[(k + 1) % 4];
            int a = cornerOf(in, true);
            int b = cornerOf(out, false);
            // Both occurrences sit at the same corner 0-cell by construction.
            ++occDegree[a];
            ++occDegree[b];
            linkDsu.unite(a, b);
        }
    }
    for (std::size_t x = 0; x < cells0_.size(); ++x) {
        const auto& occs = occsAt0[x];
        if (occs.empty()) return report;
        int root = linkDsu.find(occs[0]);
        for (int occ : occs) {
            if (occDegree[occ] != 2) return report;
            if (linkDsu.find(occ) != root) return report;
        }
    }
    report.isClosedSurface = true;

    // Orientability: propagate face signs; adjacent faces must traverse their
    // shared 1-cell in opposite directions.
    std::vector<std::vector<std::pair<int, int>>> constraints(cells2_.size());
    bool orient = true;
    for (const auto& fs : facesAt) {
        auto [f1, d1] = fs[0];
        auto [f2, d2] = fs[1];
        if (f1 == f2) {
            if (d1 == d2) orient = false;  // face meets itself with equal direction
            continue;
        }
        int rel = -d1 * d2;  // sign[f2] = rel * sign[f1]
        constraints[f1].push_back({f2, rel});
        constraints[f2].push_back({f1, rel});
    }
    std::vector<int> sign(cells2_.size(), 0);
    for (std::size_t seed = 0; seed < cells2_.size() && orient; ++seed) {
        if (sign[seed]) continue;
        sign[seed] = 1;
        std::vector<std::size_t> stack{seed};
        while (!stack.empty() && orient) {
            auto f = stack.back();
            stack.pop_back();
            for (const auto& [other, rel] : constraints[f]) {
                int needed = rel * sign[f];
                if (sign[other] == 0) {
                    sign[other] = needed;
                    stack.push_back(static_cast<std::size_t>(other));
                } else if (sign[other] != needed) {
                    orient = false;
                }
            }
        }
    }
    report.orientable = orient;
    if (orient) report.genus = static_cast<int>((2 - report.euler) / 2);
    return report;
}

}  // namespace gbg
