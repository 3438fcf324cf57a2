#include "gbg/motion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gbg {

VertexConfig makeConfig(std::vector<int> positions) {
    std::sort(positions.begin(), positions.end());
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (positions[i] == positions[i + 1])
            throw std::invalid_argument("configuration has a repeated vertex");
    return positions;
}

Motion constantMotion(VertexConfig at) { return Motion{{std::move(at)}}; }

std::string Motion::validate(const Graph& g, const Subgraph& s) const {
    if (frames.empty()) return "motion has no frames";
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& f = frames[i];
        if (!std::is_sorted(f.begin(), f.end()) ||
            std::adjacent_find(f.begin(), f.end()) != f.end())
            return "frame " + std::to_string(i) + " is not a sorted set";
        for (int v : f)
            if (v < 0 || v >= g.numVertices() || !s.vertex[v])
                return "frame " + std::to_string(i) + " leaves the graph";
        if (f.size() != frames[0].size())
            return "frame " + std::to_string(i) + " changes the robot count";
    }
    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        std::vector<int> gone, came;
        std::set_difference(frames[i].begin(), frames[i].end(), frames[i + 1].begin(),
                            frames[i + 1].end(), std::back_inserter(gone));
        std::set_difference(frames[i + 1].begin(), frames[i + 1].end(), frames[i].begin(),
                            frames[i].end(), std::back_inserter(came));
        if (gone.size() != 1 || came.size() != 1)
            return "frames " + std::to_string(i) + "->" + std::to_string(i + 1) +
                   " move " + std::to_string(gone.size()) + " robots";
        int u = gone[0], w = came[0];
        if (g.edgeBetween(u, w, s) < 0)
            return "frames " + std::to_string(i) + "->" + std::to_string(i + 1) +
                   " move " + g.vertexName(u) + "->" + g.vertexName(w) +
                   " without an edge";
        // Both frames exclude the other endpoint automatically: u is only in
        // frame i, w only in frame i+1, and all other positions coincide.
    }
    return {};
}

Motion Motion::reversed() const {
    Motion out = *this;
    std::reverse(out.frames.begin(), out.frames.end());
    return out;
}

void Motion::append(const Motion& tail) {
    if (tail.frames.empty()) return;
    if (frames.empty()) {
        frames = tail.frames;
        return;
    }
    if (frames.back() != tail.frames.front())
        throw std::invalid_argument("motion concatenation endpoints differ");
    frames.insert(frames.end(), tail.frames.begin() + 1, tail.frames.end());
}

void Motion::pruneBacktracks() {
    std::vector<VertexConfig> out;
    for (const auto& f : frames) {
        if (out.size() >= 2 && out[out.size() - 2] == f)
            out.pop_back();
        else
            out.push_back(f);
    }
    frames = std::move(out);
}

}  // namespace gbg
