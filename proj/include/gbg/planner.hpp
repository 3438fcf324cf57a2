#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gbg/motion.hpp"

namespace gbg {

struct PlanStats {
    long long moves = 0;
    long long elementaryOps = 0;  // edge traversals in searches + per-move bookkeeping
};

struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Marked vertices whose removal leaves all other marked vertices in one
// component; ops accumulates traversal counts.
std::vector<int> extremePoints(const Graph& g, const Subgraph& s,
                               const std::vector<int>& marked, long long* ops = nullptr);

// Shortest path from x to its closest other marked vertex; interior is
// robot-free. Ties: smallest vertex id.
std::vector<int> neighbourPath(const Graph& g, const Subgraph& s,
                               const std::vector<int>& marked, int x,
                               long long* ops = nullptr);

struct PlanResult {
    Motion motion;
    PlanStats stats;
};

PlanResult plan(const Graph& g, const Subgraph& s, const VertexConfig& start,
                const VertexConfig& goal);
inline PlanResult plan(const Graph& g, const VertexConfig& start, const VertexConfig& goal) {
    return plan(g, g.fullSubgraph(), start, goal);
}

}  // namespace gbg
