#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbg {

// Cells of a graph are encoded as ints: vertex v -> v, edge e -> numVertices()+e.
// This matches the canonical (kind, id) order with vertices before edges.

struct EdgeEnds {
    int u = -1;  // u <= v; u == v encodes a loop
    int v = -1;
};

// Vertex/edge membership flags for an induced subgraph of a host graph.
struct Subgraph {
    std::vector<char> vertex;
    std::vector<char> edge;

    bool operator==(const Subgraph&) const = default;
};

struct SubdivisionViolation {
    enum class Kind { EssentialPath, EssentialCycle, Loop, MultiEdge };
    Kind kind;
    std::vector<int> witnessCells;  // encoded cell ids
    int length = 0;
};

struct SubdivisionReport {
    bool ok = true;
    std::vector<SubdivisionViolation> violations;
};

struct LightDecomposition {
    // (removed edge, witness cycle as edge ids) in removal order.
    std::vector<std::pair<int, std::vector<int>>> removed;
    Subgraph residualTree;
};

struct LightFailure {
    std::vector<int> witnessCycle;  // edge ids of a cycle no (h, C) covers
};

struct BuildStep {
    enum class Op { AddHanging, StretchHanging, AddCycle };
    Op op;
    int edge;
    int attachVertex = -1;                 // tree steps: the existing endpoint
    std::optional<std::vector<int>> witnessCycle;  // add-cycle: light witness (edge ids)
};

struct BuildOrder {
    std::vector<int> startPath;  // n vertex ids forming a simple path
    std::vector<BuildStep> steps;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

class Graph {
public:
    Graph() = default;

    // Graph file format: '#' comments, "v <name>", "e <a> <b>".
    // Vertices may be introduced implicitly by an edge line.
    static Graph parse(const std::string& text);
    static Graph fromNamedEdges(const std::vector<std::string>& vertices,
                                const std::vector<std::pair<std::string, std::string>>& edges);

    int numVertices() const { return static_cast<int>(names_.size()); }
    int numEdges() const { return static_cast<int>(edges_.size()); }
    int numCells() const { return numVertices() + numEdges(); }

    const std::string& vertexName(int v) const { return names_[v]; }
    std::optional<int> vertexId(const std::string& name) const;
    EdgeEnds edge(int e) const { return edges_[e]; }
    const std::vector<EdgeEnds>& edges() const { return edges_; }

    bool isVertexCell(int cell) const { return cell < numVertices(); }
    int cellOfVertex(int v) const { return v; }
    int cellOfEdge(int e) const { return numVertices() + e; }
    int edgeOfCell(int cell) const { return cell - numVertices(); }
    std::string cellLabel(int cell) const;

    Subgraph fullSubgraph() const;
    Subgraph emptySubgraph() const;
    // Induced subgraph on the given cells; drops edges with a missing endpoint.
    Subgraph subgraphOfCells(const std::vector<int>& cells) const;
    std::vector<int> cellsOf(const Subgraph& s) const;

    const std::vector<int>& incidentEdges(int v) const { return incident_[v]; }
    int degree(int v) const;
    int degree(int v, const Subgraph& s) const;
    std::vector<int> essentialVertices() const;

    // Closed edge plus all open edges attached to its endpoints, as cell ids.
    std::vector<int> neighbourhoodCells(int e) const;
    // Complement subgraph G - Nbhd(e).
    Subgraph complementOfNeighbourhood(int e) const;
    Subgraph complementOfNeighbourhood(int e, const Subgraph& s) const;

    bool connected() const;
    bool connected(const Subgraph& s) const;
    // Vertex sets of connected components, each sorted; components sorted by smallest vertex.
    std::vector<std::vector<int>> componentVertexSets(const Subgraph& s) const;
    std::vector<Subgraph> componentSubgraphs(const Subgraph& s) const;

    // Edges whose removal disconnects their component.
    std::vector<int> bridgeEdges(const Subgraph& s) const;

    int firstBetti() const { return firstBetti(fullSubgraph()); }
    int firstBetti(const Subgraph& s) const;

    // Shortest path between vertices inside a subgraph, as vertex ids
    // (BFS, smaller vertex ids explored first). Empty if unreachable.
    std::vector<int> shortestPath(int from, int to, const Subgraph& s) const;

    // Smallest-id edge joining u and w inside a subgraph; -1 if none.
    int edgeBetween(int u, int w, const Subgraph& s) const;

    SubdivisionReport checkSubdivision(int n, bool strengthened = false) const;

    struct Subdivision;
    Subdivision subdivideFor(int n) const;

    struct LightResult {
        std::optional<LightDecomposition> decomposition;
        std::optional<LightFailure> failure;
        bool ok() const { return decomposition.has_value(); }
    };
    LightResult lightDecompose(std::size_t cycleCap = 1000000) const;

    BuildOrder buildOrder(int n, const std::optional<LightDecomposition>& light = {}) const;
    BuildOrder buildOrder(int n, const Subgraph& s,
                          const std::optional<LightDecomposition>& light = {}) const;

    std::string toText() const;

private:
    std::vector<std::string> names_;       // sorted; vertex id order == lexicographic order
    std::vector<EdgeEnds> edges_;          // declaration order
    std::vector<std::vector<int>> incident_;

    void buildIncidence();
    // All simple cycles through edge e inside s, as edge-id lists, shortest first.
    std::vector<std::vector<int>> cyclesThroughEdge(int e, const Subgraph& s,
                                                    std::size_t cap) const;
};

struct Graph::Subdivision {
    Graph graph;
    // old cell id -> new cell ids (a vertex maps to one vertex; an edge to
    // its chain of n+1 edges plus n interior vertices).
    std::vector<std::vector<int>> cellMap;
};

}  // namespace gbg
