#include "gbg/planner.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gbg {

namespace {

// Level-by-level BFS from x; stops at the first level containing a target.
// Marked vertices other than x are never expanded through. Returns the path
// x..target with the smallest eligible target id, or empty.
std::vector<int> bfsToNearest(const Graph& g, const Subgraph& s, int x,
                              const std::vector<char>& isTarget,
                              const std::vector<char>& isBlocked, long long* ops) {
    std::vector<int> prev(g.numVertices(), -2);
    prev[x] = -1;
    std::vector<int> level{x};
    while (!level.empty()) {
        int found = -1;
        for (int v : level)
            if (v != x && isTarget[v] && (found < 0 || v < found)) found = v;
        if (found >= 0) {
            std::vector<int> path;
            for (int v = found; v != -1; v = prev[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            return path;
        }
        std::vector<int> next;
        for (int v : level) {
            if (v != x && isBlocked[v]) continue;
            for (int e : g.incidentEdges(v)) {
                if (!s.edge[e]) continue;
                if (ops) ++*ops;
                auto ends = g.edge(e);
                int w = ends.u == v ? ends.v : ends.u;
                if (w == v || !s.vertex[w] || prev[w] != -2) continue;
                prev[w] = v;
                next.push_back(w);
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return {};
}

}  // namespace

std::vector<int> extremePoints(const Graph& g, const Subgraph& s,
                               const std::vector<int>& marked, long long* ops) {
    if (marked.empty()) throw std::invalid_argument("marked set is empty");
    for (int v : marked)
        if (v < 0 || v >= g.numVertices() || !s.vertex[v])
            throw std::invalid_argument("marked vertex absent from the graph");
    std::vector<int> out;
    std::vector<char> isMarked(g.numVertices(), 0);
    for (int v : marked) isMarked[v] = 1;
    for (int x : marked) {
        // BFS over s - x from one other marked vertex; x is extreme iff all
        // other marked vertices are reached.
        std::vector<int> others;
        for (int v : marked)
            if (v != x) others.push_back(v);
        if (others.empty()) {
            out.push_back(x);
            continue;
        }
        std::vector<char> seen(g.numVertices(), 0);
        seen[others[0]] = 1;
        std::deque<int> queue{others[0]};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int e : g.incidentEdges(v)) {
                if (!s.edge[e]) continue;
                if (ops) ++*ops;
                auto ends = g.edge(e);
                int w = ends.u == v ? ends.v : ends.u;
                if (w == v || w == x || !s.vertex[w] || seen[w]) continue;
                seen[w] = 1;
                queue.push_back(w);
            }
        }
        bool extreme = std::all_of(others.begin(), others.end(),
                                   [&](int v) { return seen[v]; });
        if (extreme) out.push_back(x);
    }
    return out;
}

std::vector<int> neighbourPath(const Graph& g, const Subgraph& s,
                               const std::vector<int>& marked, int x, long long* ops) {
    if (marked.size() < 2) throw std::invalid_argument("need at least 2 marked vertices");
    std::vector<char> isMarked(g.numVertices(), 0);
    for (int v : marked) isMarked[v] = 1;
    if (!isMarked[x]) throw std::invalid_argument("x is not marked");
    return bfsToNearest(g, s, x, isMarked, isMarked, ops);
}

namespace {

struct Planner {
    const Graph& g;
    PlanStats stats;

    std::vector<VertexConfig> run(Subgraph sub, VertexConfig start, VertexConfig goal) {
        if (start == goal) return {start};
        // Marks: all start and goal positions, deduplicated.
        std::vector<int> marked = start;
        marked.insert(marked.end(), goal.begin(), goal.end());
        std::sort(marked.begin(), marked.end());
        marked.erase(std::unique(marked.begin(), marked.end()), marked.end());

        auto extremes = extremePoints(g, sub, marked, &stats.elementaryOps);
        if (extremes.empty())
            throw PlanError("no extreme mark; configurations unreachable");
        int y = *std::min_element(extremes.begin(), extremes.end());

        bool inStart = std::binary_search(start.begin(), start.end(), y);
        bool inGoal = std::binary_search(goal.begin(), goal.end(), y);

        if (inStart && inGoal) {
            // The robot at y is already home: park it and shrink the instance.
            auto sub2 = removeVertex(sub, y);
            auto frames = run(sub2, without(start, y), without(goal, y));
            for (auto& f : frames) f.insert(std::lower_bound(f.begin(), f.end(), y), y);
            return frames;
        }
        if (inStart) {
            // Plan the reversed instance; every legal move is reversible.
            auto frames = run(sub, goal, start);
            std::reverse(frames.begin(), frames.end());
            return frames;
        }

        // y is a goal-only mark: walk the nearest robot to it. Robots sit at
        // start positions; goal marks are immaterial to collision.
        std::vector<char> isStart(g.numVertices(), 0);
        for (int v : start) isStart[v] = 1;
        std::vector<char> blocked = isStart;
        auto path = bfsToNearest(g, sub, y, isStart, blocked, &stats.elementaryOps);
        if (path.empty())
            throw PlanError("goal vertex " + g.vertexName(y) + " unreachable by any robot");
        int x = path.back();

        std::vector<VertexConfig> frames{start};
        VertexConfig current = start;
        for (std::size_t i = path.size() - 1; i-- > 0;) {
            int from = path[i + 1], to = path[i];
            current.erase(std::lower_bound(current.begin(), current.end(), from));
            current.insert(std::lower_bound(current.begin(), current.end(), to), to);
            frames.push_back(current);
            ++stats.elementaryOps;
            ++stats.moves;
        }

        auto sub2 = removeVertex(sub, y);
        auto rest = run(sub2, without(current, y), without(goal, y));
        for (auto& f : rest) f.insert(std::lower_bound(f.begin(), f.end(), y), y);
        for (std::size_t i = 1; i < rest.size(); ++i) frames.push_back(rest[i]);
        (void)x;
        return frames;
    }

    Subgraph removeVertex(Subgraph sub, int y) const {
        sub.vertex[y] = 0;
        for (int e : g.incidentEdges(y)) sub.edge[e] = 0;
        return sub;
    }

    static VertexConfig without(VertexConfig c, int y) {
        c.erase(std::lower_bound(c.begin(), c.end(), y));
        return c;
    }
};

}  // namespace

PlanResult plan(const Graph& g, const Subgraph& s, const VertexConfig& start,
                const VertexConfig& goal) {
    if (start.size() != goal.size())
        throw std::invalid_argument("start and goal have different robot counts");
    for (const auto& cfg : {start, goal})
        for (int v : cfg)
            if (v < 0 || v >= g.numVertices() || !s.vertex[v])
                throw std::invalid_argument("configuration vertex absent from the graph");
    Planner planner{g, {}};
    Motion motion{planner.run(s, start, goal)};
    planner.stats.moves = motion.moves();
    return {std::move(motion), planner.stats};
}

}  // namespace gbg
