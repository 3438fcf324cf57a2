// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbg/engine.hpp"
#include "gbg/oracle.hpp"
#include "gbg/planner.hpp"
#include "test_graphs.hpp"

using namespace gbg;
using namespace gbgtest;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds,
            const std::string& detail) {
    std::printf("%s %2d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                seconds, detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void criterion(int number, const std::string& what,
               const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();
    report(number, what, ok, seconds, detail);
}

long long treeRank(const Graph& g) {
    long long total = 0;
    for (int v = 0; v < g.numVertices(); ++v) {
        long long d = g.degree(v);
        total += (d - 1) * (d - 2) / 2;
    }
    return total;
}

// ---- isomorphism-free generation of connected simple graphs by edge count ----

using AdjMatrix = std::vector<std::vector<char>>;

// Lexicographically minimal upper-triangular adjacency string over all vertex
// orderings, with prefix pruning; adequate for <= 10 vertices.
std::string minlexCertificate(const AdjMatrix& adj) {
    int v = static_cast<int>(adj.size());
    std::string best;
    std::vector<int> order;
    std::vector<char> used(v, 0);
    std::string partial;
    std::function<void()> rec = [&]() {
        int placed = static_cast<int>(order.size());
        if (placed == v) {
            if (best.empty() || partial < best) best = partial;
            return;
        }
        for (int cand = 0; cand < v; ++cand) {
            if (used[cand]) continue;
            std::string row;
            row.reserve(placed);
            for (int prior : order) row.push_back(adj[prior][cand] ? '1' : '0');
            std::string next = partial + row;
            if (!best.empty() && next > best.substr(0, next.size())) continue;
            used[cand] = 1;
            order.push_back(cand);
            std::swap(partial, next);
            rec();
            std::swap(partial, next);
            order.pop_back();
            used[cand] = 0;
        }
    };
    rec();
    return std::to_string(v) + ":" + best;
}

Graph graphFromMatrix(const AdjMatrix& adj) {
    std::vector<std::pair<std::string, std::string>> edges;
    auto name = [](int i) { return std::string(1, static_cast<char>('a' + i)); };
    int v = static_cast<int>(adj.size());
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            if (adj[i][j]) edges.push_back({name(i), name(j)});
    return Graph::fromNamedEdges({}, edges);
}

// All connected simple graphs with exactly maxEdges edges or fewer, one per
// isomorphism class, grown edge by edge from a single edge.
std::vector<Graph> connectedGraphsUpTo(int maxEdges) {
    std::vector<Graph> out;
    std::map<std::string, AdjMatrix> level;
    AdjMatrix seed{{0, 1}, {1, 0}};
    level[minlexCertificate(seed)] = seed;
    for (int m = 1; m <= maxEdges; ++m) {
        std::map<std::string, AdjMatrix> next;
        for (const auto& [cert, adj] : level) {
            out.push_back(graphFromMatrix(adj));
            if (m == maxEdges) continue;
            int v = static_cast<int>(adj.size());
            for (int i = 0; i < v; ++i) {
                for (int j = i + 1; j < v; ++j) {
                    if (adj[i][j]) continue;
                    AdjMatrix grown = adj;
                    grown[i][j] = grown[j][i] = 1;
                    std::string c = minlexCertificate(grown);
                    if (!next.count(c)) next[c] = std::move(grown);
                }
                AdjMatrix grown = adj;
                for (auto& row : grown) row.push_back(0);
                grown.push_back(std::vector<char>(v + 1, 0));
                grown[i][v] = grown[v][i] = 1;
                std::string c = minlexCertificate(grown);
                if (!next.count(c)) next[c] = std::move(grown);
            }
        }
        level = std::move(next);
    }
    return out;
}

// ---- random connected graphs for the planner suite ----

Graph randomPlannerGraph(std::mt19937& rng) {
    while (true) {
        int v = 4 + static_cast<int>(rng() % 12);
        std::vector<std::pair<std::string, std::string>> edges;
        std::set<std::pair<int, int>> have;
        auto name = [](int i) {
            return std::string(1, static_cast<char>('a' + i / 5)) +
                   std::string(1, static_cast<char>('a' + i % 5));
        };
        for (int i = 1; i < v; ++i) {
            int p = static_cast<int>(rng() % i);
            edges.push_back({name(p), name(i)});
            have.insert({p, i});
        }
        int extra = static_cast<int>(rng() % 5);
        for (int t = 0; t < extra && static_cast<int>(edges.size()) < 30; ++t) {
            int a = static_cast<int>(rng() % v), b = static_cast<int>(rng() % v);
            if (a == b) continue;
            auto key = std::minmax(a, b);
            if (have.count({key.first, key.second})) continue;
            have.insert({key.first, key.second});
            edges.push_back({name(a), name(b)});
        }
        Graph g = Graph::fromNamedEdges({}, edges);
        if (!g.essentialVertices().empty()) return g;
    }
}

Graph starWithArms(int arms, int length) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < arms; ++a) {
        std::string prev = "hub";
        for (int i = 1; i <= length; ++i) {
            std::string cur = "arm" + std::to_string(a) + "x" + std::to_string(i);
            edges.push_back({prev, cur});
            prev = cur;
        }
    }
    return Graph::fromNamedEdges({}, edges);
}

}  // namespace

int main() {
    criterion(1, "two robots on the triod present as Z", [](std::string& detail) {
        Engine engine(triod(), {.simplify = true});
        PresentResult r = engine.present(2);
        CubeComplex cx = CubeComplex::enumerate(triod(), 2, false);
        AbelianInvariants h1 = oracleH1(cx, 0);
        detail = "generators = " + std::to_string(r.presentation.generators.size()) +
                 ", relators = " + std::to_string(r.presentation.relators.size()) +
                 ", oracle H1 rank = " + std::to_string(h1.rank);
        return r.presentation.generators.size() == 1 && r.presentation.relators.empty() &&
               h1.rank == 1 && h1.torsion.empty();
    });

    criterion(2, "tree braid groups are free of the predicted rank", [](std::string& detail) {
        std::vector<Graph> trees;
        for (int k = 3; k <= 6; ++k) trees.push_back(starGraph(k));
        trees.push_back(hTree());
        std::mt19937 rng(2024);
        for (int i = 0; i < 25; ++i) trees.push_back(randomTree(4 + static_cast<int>(rng() % 10), rng));
        int checked = 0;
        for (const Graph& original : trees) {
            Graph g = original.checkSubdivision(2).ok ? original : original.subdivideFor(2).graph;
            Engine engine(g, {.simplify = true});
            PresentResult r = engine.present(2);
            long long rank = treeRank(original);
            CubeComplex cx = CubeComplex::enumerate(g, 2, false);
            AbelianInvariants h1 = oracleH1(cx, cx.cells0().empty() ? 0 : cx.componentOf0()[0]);
            if (!r.presentation.relators.empty() ||
                static_cast<long long>(r.presentation.generators.size()) != rank ||
                h1.rank != rank || !h1.torsion.empty()) {
                detail = "mismatch on tree #" + std::to_string(checked) + ": generators = " +
                         std::to_string(r.presentation.generators.size()) +
                         ", relators = " + std::to_string(r.presentation.relators.size()) +
                         ", expected rank = " + std::to_string(rank) +
                         ", oracle rank = " + std::to_string(h1.rank);
                return false;
            }
            ++checked;
        }
        detail = std::to_string(checked) + " trees";
        return true;
    });

    criterion(3, "ordered K5 and K3,3 spaces are the expected surfaces",
              [](std::string& detail) {
        CubeComplex k5 = CubeComplex::enumerate(completeGraph(5), 2, true);
        CubeComplex k33 = CubeComplex::enumerate(completeBipartite(3, 3), 2, true);
        SurfaceReport s5 = k5.surfaceCheck(), s33 = k33.surfaceCheck();
        AbelianInvariants h5 = oracleH1(k5, 0), h33 = oracleH1(k33, 0);
        std::ostringstream d;
        d << "K5: chi = " << k5.eulerCharacteristic() << ", genus = "
          << (s5.genus ? std::to_string(*s5.genus) : "-") << ", H1 rank = " << h5.rank
          << "; K3,3: chi = " << k33.eulerCharacteristic() << ", genus = "
          << (s33.genus ? std::to_string(*s33.genus) : "-") << ", H1 rank = " << h33.rank;
        detail = d.str();
        return k5.fVector() == std::vector<long long>{20, 60, 30} &&
               k5.eulerCharacteristic() == -10 && s5.isClosedSurface &&
               s5.orientable == true && s5.genus == 6 && h5.rank == 12 &&
               h5.torsion.empty() &&
               k33.fVector() == std::vector<long long>{30, 72, 36} &&
               k33.eulerCharacteristic() == -6 && s33.isClosedSurface &&
               s33.orientable == true && s33.genus == 4 && h33.rank == 8 &&
               h33.torsion.empty();
    });

    criterion(4, "UD(T,2) is the hexagon and OD(T,2) has 12 vertices",
              [](std::string& detail) {
        CubeComplex ud = CubeComplex::enumerate(triod(), 2, false);
        CubeComplex od = CubeComplex::enumerate(triod(), 2, true);
        std::ostringstream d;
        d << "UD f = (" << ud.fVector()[0] << ", " << ud.fVector()[1] << ", "
          << ud.fVector()[2] << "), components = " << ud.componentCount()
          << "; OD vertices = " << od.cells0().size();
        detail = d.str();
        return ud.fVector() == std::vector<long long>{6, 6, 0} &&
               ud.componentCount() == 1 && od.cells0().size() == 12;
    });

    criterion(5, "n robots on a path of n vertices: one point, trivial group",
              [](std::string& detail) {
        for (int n = 2; n <= 5; ++n) {
            CubeComplex cx = CubeComplex::enumerate(pathGraph(n), n, false);
            Engine engine(pathGraph(n));
            PresentResult r = engine.present(n);
            if (cx.cells0().size() != 1 || !r.presentation.generators.empty() ||
                !r.presentation.relators.empty()) {
                detail = "failed at n = " + std::to_string(n);
                return false;
            }
        }
        detail = "n = 2..5";
        return true;
    });

    criterion(6, "triod plus a cycle edge: free product Z * Z", [](std::string& detail) {
        Graph base = Graph::fromNamedEdges(
            {}, {{"c", "a1"}, {"c", "a2"}, {"c", "a3"}, {"a1", "a2"}});
        Graph g = base.subdivideFor(2).graph;
        Engine engine(g, {.simplify = true});
        PresentResult r = engine.present(2);
        CubeComplex cx = CubeComplex::enumerate(g, 2, false);
        AbelianInvariants h1 = oracleH1(cx, 0);
        detail = "generators = " + std::to_string(r.presentation.generators.size()) +
                 ", relators = " + std::to_string(r.presentation.relators.size()) +
                 ", oracle H1 rank = " + std::to_string(h1.rank);
        return r.presentation.generators.size() == 2 && r.presentation.relators.empty() &&
               h1.rank == 2 && h1.torsion.empty();
    });

    criterion(7, "light graphs: commutator relators, m + rank generators",
              [](std::string& detail) {
        std::vector<Graph> graphs = {dumbbell(3, 3), dumbbell(4, 3), cycleChain(3),
                                     cycleChain(4, 6, 3), cycleChain(3, 7, 4)};
        int checked = 0;
        for (const Graph& g : graphs) {
            if (!g.checkSubdivision(2).ok || !g.lightDecompose().ok()) {
                detail = "graph #" + std::to_string(checked) + " not light or fails the check";
                return false;
            }
            Engine engine(g, {.simplify = true});
            PresentResult r = engine.present(2);
            long long expected = g.firstBetti() + treeRank(g);
            CubeComplex cx = CubeComplex::enumerate(g, 2, false);
            AbelianInvariants h1 = oracleH1(cx, 0);
            bool commutators = true;
            for (const auto& rel : r.presentation.relators)
                commutators = commutators && isCommutatorRelator(rel);
            if (!commutators ||
                static_cast<long long>(r.presentation.generators.size()) != expected ||
                h1.rank != expected || !h1.torsion.empty()) {
                detail = "graph #" + std::to_string(checked) + ": generators = " +
                         std::to_string(r.presentation.generators.size()) + ", expected " +
                         std::to_string(expected) + ", oracle rank = " +
                         std::to_string(h1.rank) +
                         (commutators ? "" : ", non-commutator relator");
                return false;
            }
            ++checked;
        }
        detail = std::to_string(checked) + " graphs";
        return true;
    });

    // Shared data between criteria 8/9.
    std::vector<std::array<long long, 3>> plannerSamples;  // (n, edges, ops)

    criterion(8, "1000 random planner instances are solved soundly",
              [&](std::string& detail) {
        std::mt19937 rng(4242);
        int solved = 0;
        while (solved < 1000) {
            Graph g = randomPlannerGraph(rng);
            int maxRobots = std::min(5, g.numVertices() - 1);
            int n = 1 + static_cast<int>(rng() % maxRobots);
            CubeComplex cx =
                CubeComplex::enumerate(g, g.fullSubgraph(), n, false, 1, false);
            if (cx.cells0().empty()) continue;
            auto comp = cx.componentOf0();
            int a = static_cast<int>(rng() % cx.cells0().size());
            std::vector<int> sameComp;
            for (std::size_t i = 0; i < cx.cells0().size(); ++i)
                if (comp[i] == comp[a]) sameComp.push_back(static_cast<int>(i));
            int b = sameComp[rng() % sameComp.size()];
            PlanResult r = plan(g, g.fullSubgraph(), cx.cells0()[a], cx.cells0()[b]);
            if (!r.motion.validate(g).empty() || r.motion.frames.front() != cx.cells0()[a] ||
                r.motion.frames.back() != cx.cells0()[b]) {
                detail = "invalid motion on instance " + std::to_string(solved);
                return false;
            }
            plannerSamples.push_back(
                {n, g.numEdges(), r.stats.elementaryOps});
            ++solved;
        }
        detail = "1000 instances";
        return true;
    });

    criterion(9, "planner work is bounded by c * n^2 * edges", [&](std::string& detail) {
        if (plannerSamples.empty()) {
            detail = "no samples from criterion 8";
            return false;
        }
        double c = 0;
        for (auto [n, l, ops] : plannerSamples)
            c = std::max(c, static_cast<double>(ops) / (static_cast<double>(n) * n * l));
        double residualSum = 0, residualMax = 0;
        for (auto [n, l, ops] : plannerSamples) {
            double bound = c * n * n * l;
            double residual = (bound - static_cast<double>(ops)) / bound;
            residualSum += residual;
            residualMax = std::max(residualMax, residual);
        }
        // Doubling the edge count at fixed n at most doubles the mean work.
        auto meanOps = [](const Graph& g, int armLength) {
            long long total = 0;
            int count = 0;
            for (int from = 0; from < 3; ++from)
                for (int to = 0; to < 3; ++to) {
                    if (from == to) continue;
                    auto armEnd = [&](int arm, int offset) {
                        return *g.vertexId("arm" + std::to_string(arm) + "x" +
                                           std::to_string(armLength - offset));
                    };
                    VertexConfig start = makeConfig(
                        {armEnd(from, 0), armEnd(from, 1), armEnd(from, 2)});
                    VertexConfig goal =
                        makeConfig({armEnd(to, 0), armEnd(to, 1), armEnd(to, 2)});
                    total += plan(g, start, goal).stats.elementaryOps;
                    ++count;
                }
            return static_cast<double>(total) / count;
        };
        Graph small = starWithArms(3, 6), big = starWithArms(3, 12);
        double meanSmall = meanOps(small, 6), meanBig = meanOps(big, 12);
        double ratio = meanBig / meanSmall;
        std::ostringstream d;
        d << "fitted c = " << c << ", mean residual = "
          << residualSum / plannerSamples.size() << ", max residual = " << residualMax
          << ", doubling ratio = " << ratio;
        detail = d.str();
        return ratio <= 2.0 * 1.25;
    });

    // Shared with criterion 11: every relator emitted during the sweep plus the
    // presentation it belongs to and the graph.
    struct SweepCase {
        Graph graph;
        Presentation presentation;  // unsimplified, with witnesses
    };
    std::vector<SweepCase> sweepCases;
    long long sweepRelatorCount = 0;

    criterion(10, "engine H1 equals oracle H1 for all graphs with <= 9 edges",
              [&](std::string& detail) {
        std::vector<Graph> graphs = connectedGraphsUpTo(9);
        long long checked = 0;
        for (const Graph& g : graphs) {
            for (int n = 2; n <= 3; ++n) {
                if (g.numVertices() < n) continue;
                if (!g.checkSubdivision(n).ok) continue;
                Engine engine(g);
                PresentResult r = engine.present(n);
                CubeComplex cx = CubeComplex::enumerate(g, n, false);
                AbelianInvariants expected =
                    oracleH1(cx, cx.cells0().empty() ? 0 : cx.componentOf0()[0]);
                AbelianInvariants got = abelianization(r.presentation);
                if (!(got == expected)) {
                    detail = "mismatch: n = " + std::to_string(n) + ", graph:\n" + g.toText();
                    return false;
                }
                if (!r.presentation.relators.empty()) {
                    sweepRelatorCount +=
                        static_cast<long long>(r.presentation.relators.size());
                    sweepCases.push_back({g, r.presentation});
                }
                ++checked;
            }
        }
        detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(checked) +
                 " (graph, n) cases, " + std::to_string(sweepRelatorCount) + " relators";
        return !graphs.empty() && checked > 0;
    });

    criterion(11, "every sweep relator rewrites to an H1-trivial loop",
              [&](std::string& detail) {
        long long checked = 0;
        for (const auto& item : sweepCases) {
            int robots = static_cast<int>(item.presentation.base->size());
            CubeComplex cx = CubeComplex::enumerate(item.graph, robots, false);
            auto compOf0 = cx.componentOf0();
            for (const auto& rel : item.presentation.relators) {
                Motion loop = evaluateWord(item.presentation, rel);
                auto steps = motionToOneCells(item.graph, cx, loop);
                int comp = compOf0[cx.index0(loop.frames.front())];
                if (!loopIsH1Trivial(cx, comp, steps)) {
                    detail = "nontrivial relator loop on graph:\n" + item.graph.toText();
                    return false;
                }
                ++checked;
            }
        }
        detail = std::to_string(checked) + " relators";
        return true;
    });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
