#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gbg/graph.hpp"

namespace gbg {

// A cube cell is n graph cells with pairwise disjoint closures: a sorted list
// (unordered complex) or a tuple (ordered complex) of encoded cell ids.
using CubeCell = std::vector<int>;

struct SquareSide {
    int oneCell;
    int dir;  // +1: traversed end0 -> end1
};

struct SurfaceReport {
    bool isClosedSurface = false;
    std::optional<bool> orientable;
    std::optional<int> genus;
    long long euler = 0;
};

class CubeComplex {
public:
    // Enumerates the discrete configuration space of n robots on the given
    // subgraph. maxDim caps the dimension of *stored* cells; cells of every
    // dimension up to maxStoredDim are stored, and when countAll is set the
    // full f-vector is counted in all dimensions 0..n regardless.
    static CubeComplex enumerate(const Graph& g, const Subgraph& s, int n, bool ordered,
                                 int maxStoredDim = 2, bool countAll = true);
    static CubeComplex enumerate(const Graph& g, int n, bool ordered) {
        return enumerate(g, g.fullSubgraph(), n, ordered);
    }

    bool ordered() const { return ordered_; }
    int robots() const { return n_; }

    const std::vector<CubeCell>& cells0() const { return cells0_; }
    const std::vector<CubeCell>& cells1() const { return cells1_; }
    const std::vector<CubeCell>& cells2() const { return cells2_; }
    // boundary1[i] = the two 0-cells obtained by substituting the moving
    // edge's endpoints (smaller endpoint first).
    const std::vector<std::pair<int, int>>& boundary1() const { return boundary1_; }
    // boundary2[i] = closed 4-circuit of oriented 1-cells.
    const std::vector<std::array<SquareSide, 4>>& boundary2() const { return boundary2_; }
    const std::vector<long long>& fVector() const { return fVector_; }

    int index0(const CubeCell& c) const;  // -1 if absent
    int index1(const CubeCell& c) const;

    long long eulerCharacteristic() const;
    // Connected components of the 1-skeleton: componentOf0[i] = component id;
    // components numbered by smallest member 0-cell, which is also the id order.
    std::vector<int> componentOf0() const;
    int componentCount() const;

    SurfaceReport surfaceCheck() const;

private:
    bool ordered_ = false;
    int n_ = 0;
    std::vector<CubeCell> cells0_, cells1_, cells2_;
    std::vector<std::pair<int, int>> boundary1_;
    std::vector<std::array<SquareSide, 4>> boundary2_;
    std::vector<long long> fVector_;
    std::map<CubeCell, int> index0_, index1_;

    void buildBoundaries(const Graph& g);
};

}  // namespace gbg
