#include "gbg/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gbg/dsu.hpp"

namespace gbg {

namespace {

std::vector<std::string> splitTokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Graph Graph::parse(const std::string& text) {
    std::set<std::string> declared;
    std::vector<std::pair<std::string, std::string>> edgeNames;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto toks = splitTokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "v") {
            if (toks.size() != 2) throw ParseError(lineNo, "expected: v <name>");
            declared.insert(toks[1]);
        } else if (toks[0] == "e") {
            if (toks.size() != 3) throw ParseError(lineNo, "expected: e <name1> <name2>");
            declared.insert(toks[1]);
            declared.insert(toks[2]);
            edgeNames.emplace_back(toks[1], toks[2]);
        } else {
            throw ParseError(lineNo, "unknown directive '" + toks[0] + "'");
        }
    }
    return fromNamedEdges({declared.begin(), declared.end()}, edgeNames);
}

Graph Graph::fromNamedEdges(const std::vector<std::string>& vertices,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
    Graph g;
    std::set<std::string> names(vertices.begin(), vertices.end());
    for (const auto& [a, b] : edges) {
        names.insert(a);
        names.insert(b);
    }
    g.names_.assign(names.begin(), names.end());
    std::map<std::string, int> id;
    for (int v = 0; v < g.numVertices(); ++v) id[g.names_[v]] = v;
    for (const auto& [a, b] : edges) {
        int u = id[a], v = id[b];
        g.edges_.push_back({std::min(u, v), std::max(u, v)});
    }
    g.buildIncidence();
    return g;
}

void Graph::buildIncidence() {
    incident_.assign(numVertices(), {});
    for (int e = 0; e < numEdges(); ++e) {
        incident_[edges_[e].u].push_back(e);
        if (edges_[e].v != edges_[e].u) incident_[edges_[e].v].push_back(e);
    }
}

std::optional<int> Graph::vertexId(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

std::string Graph::cellLabel(int cell) const {
    if (isVertexCell(cell)) return names_[cell];
    const auto& e = edges_[edgeOfCell(cell)];
    return names_[e.u] + "-" + names_[e.v] + "#" + std::to_string(edgeOfCell(cell));
}

Subgraph Graph::fullSubgraph() const {
    return {std::vector<char>(numVertices(), 1), std::vector<char>(numEdges(), 1)};
}

Subgraph Graph::emptySubgraph() const {
    return {std::vector<char>(numVertices(), 0), std::vector<char>(numEdges(), 0)};
}

Subgraph Graph::subgraphOfCells(const std::vector<int>& cells) const {
    Subgraph s = emptySubgraph();
    for (int c : cells) {
        if (isVertexCell(c))
            s.vertex[c] = 1;
        else
            s.edge[edgeOfCell(c)] = 1;
    }
    for (int e = 0; e < numEdges(); ++e)
        if (s.edge[e] && !(s.vertex[edges_[e].u] && s.vertex[edges_[e].v])) s.edge[e] = 0;
    return s;
}

std::vector<int> Graph::cellsOf(const Subgraph& s) const {
    std::vector<int> cells;
    for (int v = 0; v < numVertices(); ++v)
        if (s.vertex[v]) cells.push_back(v);
    for (int e = 0; e < numEdges(); ++e)
        if (s.edge[e]) cells.push_back(cellOfEdge(e));
    return cells;
}

int Graph::degree(int v) const {
    int d = 0;
    for (int e : incident_[v]) d += (edges_[e].u == edges_[e].v) ? 2 : 1;
    return d;
}

int Graph::degree(int v, const Subgraph& s) const {
    if (!s.vertex[v]) return 0;
    int d = 0;
    for (int e : incident_[v])
        if (s.edge[e]) d += (edges_[e].u == edges_[e].v) ? 2 : 1;
    return d;
}

std::vector<int> Graph::essentialVertices() const {
    std::vector<int> out;
    for (int v = 0; v < numVertices(); ++v)
        if (degree(v) >= 3) out.push_back(v);
    return out;
}

std::vector<int> Graph::neighbourhoodCells(int e) const {
    if (e < 0 || e >= numEdges()) throw std::out_of_range("unknown edge id");
    std::set<int> cells{cellOfEdge(e), edges_[e].u, edges_[e].v};
    for (int v : {edges_[e].u, edges_[e].v})
        for (int f : incident_[v]) cells.insert(cellOfEdge(f));
    return {cells.begin(), cells.end()};
}

Subgraph Graph::complementOfNeighbourhood(int e) const {
    return complementOfNeighbourhood(e, fullSubgraph());
}

Subgraph Graph::complementOfNeighbourhood(int e, const Subgraph& s) const {
    Subgraph out = s;
    for (int c : neighbourhoodCells(e)) {
        if (isVertexCell(c))
            out.vertex[c] = 0;
        else
            out.edge[edgeOfCell(c)] = 0;
    }
    // Drop edges that lost an endpoint (open edges of Nbhd already removed).
    for (int f = 0; f < numEdges(); ++f)
        if (out.edge[f] && !(out.vertex[edges_[f].u] && out.vertex[edges_[f].v])) out.edge[f] = 0;
    return out;
}

std::vector<std::vector<int>> Graph::componentVertexSets(const Subgraph& s) const {
    Dsu dsu(numVertices());
    for (int e = 0; e < numEdges(); ++e)
        if (s.edge[e]) dsu.unite(edges_[e].u, edges_[e].v);
    std::map<int, std::vector<int>> byRoot;
    for (int v = 0; v < numVertices(); ++v)
        if (s.vertex[v]) byRoot[dsu.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : byRoot) out.push_back(std::move(vs));
    return out;
}

std::vector<Subgraph> Graph::componentSubgraphs(const Subgraph& s) const {
    std::vector<Subgraph> out;
    for (const auto& vs : componentVertexSets(s)) {
        Subgraph c = emptySubgraph();
        for (int v : vs) c.vertex[v] = 1;
        for (int e = 0; e < numEdges(); ++e)
            if (s.edge[e] && c.vertex[edges_[e].u]) c.edge[e] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

bool Graph::connected() const { return connected(fullSubgraph()); }

bool Graph::connected(const Subgraph& s) const {
    return componentVertexSets(s).size() <= 1;
}

std::vector<int> Graph::bridgeEdges(const Subgraph& s) const {
    // An edge is a bridge iff removing it splits its component. Loops never are.
    std::vector<int> out;
    for (int e = 0; e < numEdges(); ++e) {
        if (!s.edge[e]) continue;
        if (edges_[e].u == edges_[e].v) continue;
        Subgraph t = s;
        t.edge[e] = 0;
        if (shortestPath(edges_[e].u, edges_[e].v, t).empty()) out.push_back(e);
    }
    return out;
}

int Graph::firstBetti(const Subgraph& s) const {
    int vcount = std::count(s.vertex.begin(), s.vertex.end(), 1);
    int ecount = std::count(s.edge.begin(), s.edge.end(), 1);
    return ecount - vcount + static_cast<int>(componentVertexSets(s).size());
}

std::vector<int> Graph::shortestPath(int from, int to, const Subgraph& s) const {
    if (!s.vertex[from] || !s.vertex[to]) return {};
    std::vector<int> prev(numVertices(), -2);
    prev[from] = -1;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (int e : incident_[v]) {
            if (!s.edge[e]) continue;
            int w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
            if (!s.vertex[w] || prev[w] != -2) continue;
            prev[w] = v;
            queue.push_back(w);
        }
    }
    if (prev[to] == -2) return {};
    std::vector<int> path;
    for (int v = to; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

int Graph::edgeBetween(int u, int w, const Subgraph& s) const {
    for (int e : incident_[u]) {
        if (!s.edge[e]) continue;
        const auto& ee = edges_[e];
        if ((ee.u == u && ee.v == w) || (ee.u == w && ee.v == u)) return e;
    }
    return -1;
}

SubdivisionReport Graph::checkSubdivision(int n, bool strengthened) const {
    if (n < 2) throw std::invalid_argument("robot count must be >= 2");
    SubdivisionReport report;
    if (strengthened) {
        if (n != 2) throw std::invalid_argument("strengthened check requires n = 2");
        std::map<std::pair<int, int>, std::vector<int>> byEnds;
        for (int e = 0; e < numEdges(); ++e) {
            if (edges_[e].u == edges_[e].v) {
                report.violations.push_back({SubdivisionViolation::Kind::Loop,
                                             {cellOfEdge(e)}, 1});
            }
            byEnds[{edges_[e].u, edges_[e].v}].push_back(e);
        }
        for (const auto& [ends, es] : byEnds) {
            if (ends.first != ends.second && es.size() > 1) {
                std::vector<int> cells;
                for (int e : es) cells.push_back(cellOfEdge(e));
                report.violations.push_back(
                    {SubdivisionViolation::Kind::MultiEdge, cells, static_cast<int>(es.size())});
            }
        }
        report.ok = report.violations.empty();
        return report;
    }

    auto essential = essentialVertices();
    std::vector<char> isEssential(numVertices(), 0);
    for (int v : essential) isEssential[v] = 1;
    Subgraph all = fullSubgraph();

    // Essential paths: shortest path between each pair of distinct essential
    // vertices must have >= n+1 edges. A shortest witness suffices for "every path".
    for (std::size_t i = 0; i < essential.size(); ++i) {
        for (std::size_t j = i + 1; j < essential.size(); ++j) {
            auto path = shortestPath(essential[i], essential[j], all);
            if (path.empty()) continue;
            int len = static_cast<int>(path.size()) - 1;
            if (len < n + 1) {
                std::vector<int> cells(path.begin(), path.end());
                report.violations.push_back(
                    {SubdivisionViolation::Kind::EssentialPath, cells, len});
            }
        }
    }

    // Essential cycles: every cycle through a vertex of degree > 2 needs >= n+1
    // edges. It is enough to check, for each short cycle, whether it is essential;
    // we look for the shortest cycle through each edge and each vertex pair.
    // Loops are cycles of length 1; multi-edges give cycles of length 2.
    auto recordCycle = [&](const std::vector<int>& vertexCycle, int len) {
        bool essentialCycle = false;
        for (int v : vertexCycle)
            if (degree(v) > 2) essentialCycle = true;
        if (!essentialCycle || len >= n + 1) return;
        std::vector<int> cells(vertexCycle.begin(), vertexCycle.end());
        report.violations.push_back({SubdivisionViolation::Kind::EssentialCycle, cells, len});
    };
    for (int e = 0; e < numEdges(); ++e) {
        if (edges_[e].u == edges_[e].v) {
            recordCycle({edges_[e].u}, 1);
            continue;
        }
        Subgraph rest = all;
        rest.edge[e] = 0;
        auto back = shortestPath(edges_[e].v, edges_[e].u, rest);
        if (back.empty()) continue;
        recordCycle(back, static_cast<int>(back.size()));
    }
    report.ok = report.violations.empty();
    return report;
}

Graph::Subdivision Graph::subdivideFor(int n) const {
    std::vector<std::string> newVertices = names_;
    std::vector<std::pair<std::string, std::string>> newEdges;
    std::set<std::string> used(names_.begin(), names_.end());
    auto freshName = [&](const std::string& base) {
        std::string name = base;
        while (used.count(name)) name += "'";
        used.insert(name);
        return name;
    };

    struct EdgeChain {
        std::vector<std::string> innerNames;
        std::vector<int> edgeSlots;  // indices into newEdges
    };
    std::vector<EdgeChain> chains(numEdges());
    for (int e = 0; e < numEdges(); ++e) {
        const auto& ends = edges_[e];
        auto& chain = chains[e];
        std::string prev = names_[ends.u];
        for (int k = 1; k <= n; ++k) {
            std::string mid = freshName(names_[ends.u] + "." + names_[ends.v] + "." +
                                        std::to_string(e) + "." + std::to_string(k));
            chain.innerNames.push_back(mid);
            chain.edgeSlots.push_back(static_cast<int>(newEdges.size()));
            newEdges.emplace_back(prev, mid);
            newVertices.push_back(mid);
            prev = mid;
        }
        chain.edgeSlots.push_back(static_cast<int>(newEdges.size()));
        newEdges.emplace_back(prev, names_[ends.v]);
    }

    Subdivision out{fromNamedEdges(newVertices, newEdges), {}};
    out.cellMap.assign(numCells(), {});
    const Graph& h = out.graph;
    for (int v = 0; v < numVertices(); ++v)
        out.cellMap[v] = {h.vertexId(names_[v]).value()};
    for (int e = 0; e < numEdges(); ++e) {
        auto& cells = out.cellMap[cellOfEdge(e)];
        for (const auto& name : chains[e].innerNames)
            cells.push_back(h.vertexId(name).value());
        for (int slot : chains[e].edgeSlots) cells.push_back(h.cellOfEdge(slot));
    }
    return out;
}

std::vector<std::vector<int>> Graph::cyclesThroughEdge(int e, const Subgraph& s,
                                                       std::size_t cap) const {
    std::vector<std::vector<int>> cycles;
    if (!s.edge[e]) return cycles;
    int start = edges_[e].u, target = edges_[e].v;
    if (start == target) {
        cycles.push_back({e});
        return cycles;
    }
    // DFS for simple paths target -> start avoiding e; each gives a cycle through e.
    std::vector<char> visited(numVertices(), 0);
    std::vector<int> pathEdges;
    std::size_t enumerated = 0;
    std::function<void(int)> dfs = [&](int v) {
        if (v == start) {
            ++enumerated;
            if (enumerated > cap)
                throw std::runtime_error("cycle enumeration cap exceeded");
            std::vector<int> cycle = pathEdges;
            cycle.push_back(e);
            cycles.push_back(std::move(cycle));
            return;
        }
        visited[v] = 1;
        for (int f : incident_[v]) {
            if (!s.edge[f] || f == e) continue;
            int w = edges_[f].u == v ? edges_[f].v : edges_[f].u;
            if (w == v || !s.vertex[w] || visited[w]) continue;
            pathEdges.push_back(f);
            dfs(w);
            pathEdges.pop_back();
        }
        visited[v] = 0;
    };
    dfs(target);
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return cycles;
}

Graph::LightResult Graph::lightDecompose(std::size_t cycleCap) const {
    if (!connected()) throw std::invalid_argument("light decomposition needs a connected graph");
    Subgraph current = fullSubgraph();
    LightDecomposition decomp;

    auto hasCycle = [&](const Subgraph& s) {
        return firstBetti(s) > 0;
    };

    while (hasCycle(current)) {
        bool found = false;
        for (int h = 0; h < numEdges() && !found; ++h) {
            if (!current.edge[h]) continue;
            auto cycles = cyclesThroughEdge(h, current, cycleCap);
            if (cycles.empty()) continue;
            Subgraph rest = complementOfNeighbourhood(h, current);
            auto nonBridge = [&] {
                std::vector<char> bridge(numEdges(), 0);
                for (int b : bridgeEdges(rest)) bridge[b] = 1;
                std::vector<int> out;
                for (int f = 0; f < numEdges(); ++f)
                    if (rest.edge[f] && !bridge[f]) out.push_back(f);
                return out;
            }();
            std::vector<char> cycleVertex(numVertices(), 0);
            for (int f : nonBridge) {
                cycleVertex[edges_[f].u] = 1;
                cycleVertex[edges_[f].v] = 1;
            }
            // (ii) all cycles of rest in one component
            bool oneComponent = true;
            if (!nonBridge.empty()) {
                auto comps = componentVertexSets(rest);
                int seen = -1;
                std::vector<int> compOf(numVertices(), -1);
                for (std::size_t i = 0; i < comps.size(); ++i)
                    for (int v : comps[i]) compOf[v] = static_cast<int>(i);
                for (int f : nonBridge) {
                    int c = compOf[edges_[f].u];
                    if (seen == -1) seen = c;
                    if (c != seen) oneComponent = false;
                }
            }
            if (!oneComponent) continue;
            for (const auto& cycle : cycles) {
                bool disjoint = true;
                for (int f : cycle) {
                    if (cycleVertex[edges_[f].u] || cycleVertex[edges_[f].v]) disjoint = false;
                }
                if (!disjoint) continue;
                decomp.removed.emplace_back(h, cycle);
                current.edge[h] = 0;
                found = true;
                break;
            }
        }
        if (!found) {
            // Witness: some cycle that no (h, C) covers at this stage.
            for (int h = 0; h < numEdges(); ++h) {
                if (!current.edge[h]) continue;
                auto cycles = cyclesThroughEdge(h, current, cycleCap);
                if (!cycles.empty()) return {std::nullopt, LightFailure{cycles.front()}};
            }
            return {std::nullopt, LightFailure{{}}};
        }
    }
    decomp.residualTree = current;
    return {decomp, std::nullopt};
}

BuildOrder Graph::buildOrder(int n, const std::optional<LightDecomposition>& light) const {
    return buildOrder(n, fullSubgraph(), light);
}

BuildOrder Graph::buildOrder(int n, const Subgraph& s,
                             const std::optional<LightDecomposition>& light) const {
    BuildOrder order;

    // Spanning tree: light's residual tree when supplied, else BFS from the
    // smallest vertex of s.
    std::vector<char> treeEdge(numEdges(), 0);
    if (light) {
        for (int e = 0; e < numEdges(); ++e) treeEdge[e] = light->residualTree.edge[e];
    } else {
        int root = -1;
        for (int v = 0; v < numVertices() && root < 0; ++v)
            if (s.vertex[v]) root = v;
        if (root < 0) throw std::invalid_argument("empty subgraph");
        std::vector<char> seen(numVertices(), 0);
        seen[root] = 1;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int e : incident_[v]) {
                if (!s.edge[e]) continue;
                int w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
                if (w == v || !s.vertex[w] || seen[w]) continue;
                seen[w] = 1;
                treeEdge[e] = 1;
                queue.push_back(w);
            }
        }
        for (int v = 0; v < numVertices(); ++v)
            if (s.vertex[v] && !seen[v])
                throw std::invalid_argument("build order needs a connected subgraph");
    }

    // Start path: lexicographically smallest simple path of n vertices in the tree.
    Subgraph tree = s;
    tree.edge = treeEdge;
    std::vector<int> best;
    std::vector<int> path;
    std::vector<char> onPath(numVertices(), 0);
    std::function<bool(int)> extend = [&](int v) {
        path.push_back(v);
        onPath[v] = 1;
        bool done = false;
        if (static_cast<int>(path.size()) == n) {
            best = path;
            done = true;
        } else {
            for (int e : incident_[v]) {
                if (!tree.edge[e]) continue;
                int w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
                if (onPath[w]) continue;
                if (extend(w)) {
                    done = true;
                    break;
                }
            }
        }
        if (!done) {
            onPath[v] = 0;
            path.pop_back();
        }
        return done;
    };
    for (int v = 0; v < numVertices() && best.empty(); ++v)
        if (s.vertex[v]) extend(v);
    if (best.empty())
        throw std::runtime_error("no simple path of " + std::to_string(n) +
                                 " vertices in the spanning tree");
    order.startPath = best;

    // Grow the tree outward from the start path, smallest reachable edge first.
    std::vector<char> built(numVertices(), 0);
    for (int v : best) built[v] = 1;
    std::vector<char> edgeDone(numEdges(), 0);
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        int e = edgeBetween(best[i], best[i + 1], tree);
        edgeDone[e] = 1;
    }
    std::vector<int> builtDegree(numVertices(), 0);
    for (int e = 0; e < numEdges(); ++e)
        if (edgeDone[e]) {
            ++builtDegree[edges_[e].u];
            ++builtDegree[edges_[e].v];
        }
    while (true) {
        int pick = -1, attach = -1;
        for (int e = 0; e < numEdges(); ++e) {
            if (!treeEdge[e] || edgeDone[e]) continue;
            int a = built[edges_[e].u] ? edges_[e].u
                    : built[edges_[e].v] ? edges_[e].v
                                         : -1;
            if (a < 0) continue;
            pick = e;
            attach = a;
            break;
        }
        if (pick < 0) break;
        auto op = builtDegree[attach] >= 2 ? BuildStep::Op::AddHanging
                                           : BuildStep::Op::StretchHanging;
        order.steps.push_back({op, pick, attach, std::nullopt});
        edgeDone[pick] = 1;
        int other = edges_[pick].u == attach ? edges_[pick].v : edges_[pick].u;
        built[other] = 1;
        ++builtDegree[attach];
        ++builtDegree[other];
    }

    // Non-tree edges close cycles. With a light decomposition, replay its
    // removals in reverse; otherwise ascending edge id.
    if (light) {
        for (auto it = light->removed.rbegin(); it != light->removed.rend(); ++it)
            order.steps.push_back(
                {BuildStep::Op::AddCycle, it->first, -1, it->second});
    } else {
        for (int e = 0; e < numEdges(); ++e)
            if (s.edge[e] && !treeEdge[e])
                order.steps.push_back({BuildStep::Op::AddCycle, e, -1, std::nullopt});
    }
    return order;
}

std::string Graph::toText() const {
    std::ostringstream out;
    for (const auto& name : names_) out << "v " << name << "\n";
    for (const auto& e : edges_) out << "e " << names_[e.u] << " " << names_[e.v] << "\n";
    return out.str();
}

}  // namespace gbg
