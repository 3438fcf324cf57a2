#pragma once

#include <string>
#include <vector>

#include "gbg/graph.hpp"

namespace gbg {

// Sorted list of n distinct vertex ids.
using VertexConfig = std::vector<int>;

VertexConfig makeConfig(std::vector<int> positions);

// A discrete collision-free trajectory: a walk in the 1-skeleton of UD(G,n).
struct Motion {
    std::vector<VertexConfig> frames;

    int moves() const { return static_cast<int>(frames.size()) - 1; }

    // Empty string when every consecutive pair is a legal single-robot move
    // along an edge of g (restricted to s); otherwise a diagnostic.
    std::string validate(const Graph& g, const Subgraph& s) const;
    std::string validate(const Graph& g) const { return validate(g, g.fullSubgraph()); }

    Motion reversed() const;
    // Appends another motion whose first frame must equal our last.
    void append(const Motion& tail);
    // Removes immediate backtracks (frame sequences x,y,x collapse to x).
    void pruneBacktracks();
};

Motion constantMotion(VertexConfig at);

}  // namespace gbg
