#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbg/complex.hpp"
#include "gbg/presentation.hpp"

namespace gbg {

// Presentation data for one connected component of a configuration space,
// together with the rewriting structure that expresses any 1-skeleton loop as
// a word in the component's generators.
struct SpaceComponent {
    int base = -1;  // lexicographically smallest 0-cell of the component
    std::vector<Generator> gens;
    std::vector<Word> relators;
};

// Everything the incremental construction knows about one configuration space
// UD(S, k): its 2-skeleton, per-component presentations, and a labelling of
// the 1-skeleton (spanning-tree edges plus words on the others) that rewrites
// loops into generator words.
struct SpaceContext {
    Subgraph mask;
    int k = 0;
    CubeComplex cx;
    std::vector<int> compOf0;
    std::vector<SpaceComponent> comps;
    std::vector<char> treeEdge;  // per 1-cell
    std::vector<Word> label;     // per 1-cell, oriented end0 -> end1; letters are
                                 // generator indices local to the owning component
};

struct TraceStep {
    std::string op;  // "base-case", "add-hanging", "stretch-hanging", "add-cycle"
    int edge = -1;
    int newGenerators = 0;
    int mergedComponents = 0;
    std::vector<Word> newRelators;  // in the final local indices of their component
};

struct EngineTrace {
    std::vector<TraceStep> steps;
};

struct EngineOptions {
    bool simplify = false;
    bool memo = true;
    // Use light-decomposition witness cycles (n = 2 only) to shape cycle-step
    // relators as commutators when the independence condition holds.
    bool lightWitness = true;
};

struct PresentResult {
    Presentation presentation;
    std::vector<Word> dictionary;  // when simplified: original gen -> new word
    EngineTrace trace;
    std::shared_ptr<const SpaceContext> context;
};

class Engine {
public:
    explicit Engine(Graph g, EngineOptions options = {});

    const Graph& graph() const { return graph_; }

    // Full context of UD(S, k) for a connected subgraph S of the master graph.
    std::shared_ptr<const SpaceContext> context(const Subgraph& s, int k);

    PresentResult present(int n);

    // Motion between two 0-cells of a context's complex (same component).
    Motion connect(const SpaceContext& ctx, int from0, int to0) const;

private:
    Graph graph_;
    EngineOptions options_;
    std::map<std::pair<std::vector<char>, int>, std::shared_ptr<const SpaceContext>> memo_;
    EngineTrace* trace_ = nullptr;  // set while replaying the top-level build order

    struct DComponent {
        int base0 = -1;
        std::vector<Motion> loops;       // generating loops at base0, k robots
        std::vector<int> supportComps;   // graph components carrying robots
    };
    struct DInfo {
        CubeComplex cx;  // 1-skeleton only
        std::vector<int> compOf0;
        std::vector<DComponent> comps;
    };

    std::shared_ptr<const SpaceContext> computeContext(const Subgraph& s, int k);
    std::shared_ptr<const SpaceContext> replay(const Subgraph& s, int k,
                                               const BuildOrder& order,
                                               bool topLevel);
    // Direct edge-path-group context; used for k <= 1 and for degenerate
    // subproblems where no k-vertex start path exists.
    std::shared_ptr<SpaceContext> directContext(const Subgraph& s, int k) const;

    // Generating-loop data of UD(S, k) for possibly disconnected S.
    DInfo subspaceInfo(const Subgraph& s, int k);

    std::shared_ptr<const SpaceContext> glue(const SpaceContext& prev,
                                             const Subgraph& newMask, int edge, int k,
                                             const std::optional<std::vector<int>>& witnessCycle,
                                             const char* opName);
};

}  // namespace gbg
