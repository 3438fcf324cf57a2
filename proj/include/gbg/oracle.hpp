#pragma once

#include "gbg/complex.hpp"
#include "gbg/presentation.hpp"

namespace gbg {

struct OraclePresentation {
    Presentation presentation;  // generators = non-tree 1-cells, relators = square words
    int component = 0;
    int base0Cell = 0;
    std::vector<int> generatorOneCells;  // 1-cell index per generator
    std::vector<int> treeParentEdge;     // per 0-cell: 1-cell to its BFS parent, -1 at root
};

// Edge-path group of a component of the 2-complex: BFS spanning tree from the
// smallest 0-cell, one generator per non-tree 1-cell, one relator per square.
OraclePresentation pi1Presentation(const CubeComplex& c, int component);

AbelianInvariants oracleH1(const CubeComplex& c, int component);

// H1 class of a loop in the 1-skeleton given as a sequence of 0-cell indices
// paired with the 1-cells joining them; exposed for relator soundness checks.
// Returns the exponent vector over the component's generators.
std::vector<long long> loopEdgeVector(const OraclePresentation& p, const CubeComplex& c,
                                      const std::vector<std::pair<int, int>>& steps);

// Is the given 1-skeleton loop trivial in H1 of the component? steps are
// (oneCell, dir) entries; the loop must be closed.
bool loopIsH1Trivial(const CubeComplex& c, int component,
                     const std::vector<std::pair<int, int>>& steps);

// Express a Motion as oriented 1-cells of the complex; throws on illegal steps.
std::vector<std::pair<int, int>> motionToOneCells(const Graph& g, const CubeComplex& c,
                                                  const Motion& motion);

}  // namespace gbg
