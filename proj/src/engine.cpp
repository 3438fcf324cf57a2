#include "gbg/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <stdexcept>

#include "gbg/planner.hpp"

namespace gbg {

namespace {

// An oriented walk in a 1-skeleton: (1-cell, +1 for end0 -> end1).
using CellPath = std::vector<std::pair<int, int>>;

struct SkeletonAdjacency {
    // Per 0-cell: (1-cell, other endpoint, dir when leaving this 0-cell).
    std::vector<std::vector<std::tuple<int, int, int>>> at;

    explicit SkeletonAdjacency(const CubeComplex& cx) : at(cx.cells0().size()) {
        for (std::size_t c = 0; c < cx.boundary1().size(); ++c) {
            auto [a, b] = cx.boundary1()[c];
            at[a].push_back({static_cast<int>(c), b, +1});
            if (b != a) at[b].push_back({static_cast<int>(c), a, -1});
        }
        for (auto& adj : at) std::sort(adj.begin(), adj.end());
    }
};

CellPath bfsPath(const SkeletonAdjacency& adj, const std::vector<char>* active,
                 const std::vector<char>* treeOnly, int from, int to) {
    if (from == to) return {};
    std::vector<std::pair<int, int>> prev(adj.at.size(), {-2, 0});  // (0-cell, via 1-cell*dir)
    prev[from] = {-1, 0};
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (auto [cell, other, dir] : adj.at[v]) {
            if (active && !(*active)[cell]) continue;
            if (treeOnly && !(*treeOnly)[cell]) continue;
            if (prev[other].first != -2) continue;
            prev[other] = {v, dir > 0 ? cell + 1 : -(cell + 1)};
            queue.push_back(other);
        }
    }
    if (prev[to].first == -2) throw std::logic_error("0-cells not connected in skeleton");
    CellPath path;
    for (int v = to; prev[v].first != -1; v = prev[v].first) {
        int enc = prev[v].second;
        path.push_back({std::abs(enc) - 1, enc > 0 ? +1 : -1});
    }
    std::reverse(path.begin(), path.end());
    return path;
}

CellPath reversePath(const CellPath& p) {
    CellPath out(p.rbegin(), p.rend());
    for (auto& [cell, dir] : out) dir = -dir;
    return out;
}

Motion pathMotion(const CubeComplex& cx, int from, const CellPath& path) {
    Motion m = constantMotion(cx.cells0()[from]);
    int at = from;
    for (auto [cell, dir] : path) {
        auto [a, b] = cx.boundary1()[cell];
        at = dir > 0 ? b : a;
        m.frames.push_back(cx.cells0()[at]);
    }
    return m;
}

VertexConfig insertedConfig(const VertexConfig& c, int v) {
    VertexConfig out = c;
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

CubeCell insertedCell(const CubeCell& c, int cell) {
    CubeCell out = c;
    out.insert(std::lower_bound(out.begin(), out.end(), cell), cell);
    return out;
}

Motion liftMotion(const Motion& m, const VertexConfig& parked) {
    Motion out;
    out.frames.reserve(m.frames.size());
    for (const auto& f : m.frames) {
        VertexConfig merged = f;
        for (int v : parked) merged.insert(std::lower_bound(merged.begin(), merged.end(), v), v);
        out.frames.push_back(std::move(merged));
    }
    return out;
}

Word shiftWord(const Word& w, int offset) {
    Word out = w;
    for (int& letter : out) letter = letterOf(genOf(letter) + offset, expOf(letter));
    return out;
}

}  // namespace

Engine::Engine(Graph g, EngineOptions options)
    : graph_(std::move(g)), options_(options) {}

std::shared_ptr<const SpaceContext> Engine::context(const Subgraph& s, int k) {
    std::vector<char> key = s.vertex;
    key.insert(key.end(), s.edge.begin(), s.edge.end());
    auto memoKey = std::make_pair(std::move(key), k);
    if (options_.memo) {
        auto it = memo_.find(memoKey);
        if (it != memo_.end()) return it->second;
    }
    auto result = computeContext(s, k);
    if (options_.memo) memo_[memoKey] = result;
    return result;
}

std::shared_ptr<const SpaceContext> Engine::computeContext(const Subgraph& s, int k) {
    if (k <= 1) return directContext(s, k);
    if (graph_.componentVertexSets(s).size() != 1)
        throw std::logic_error("context requires a connected subgraph");
    BuildOrder order;
    try {
        order = graph_.buildOrder(k, s);
    } catch (const std::runtime_error&) {
        // Degenerate subproblem (no k-vertex start path in the spanning tree):
        // fall back to the brute-force edge-path-group context.
        return directContext(s, k);
    }
    return replay(s, k, order, false);
}

std::shared_ptr<SpaceContext> Engine::directContext(const Subgraph& s, int k) const {
    auto ctx = std::make_shared<SpaceContext>();
    ctx->mask = s;
    ctx->k = k;
    ctx->cx = CubeComplex::enumerate(graph_, s, std::max(k, 0), false, 2, false);
    const auto& cx = ctx->cx;
    ctx->compOf0 = cx.componentOf0();
    ctx->treeEdge.assign(cx.cells1().size(), 0);
    ctx->label.assign(cx.cells1().size(), {});
    int compCount = cx.componentCount();
    ctx->comps.resize(compCount);

    SkeletonAdjacency adj(cx);
    std::vector<int> parentStep(cx.cells0().size(), 0);  // signed 1-cell+1 toward root
    std::vector<char> isTree(cx.cells1().size(), 0);

    for (int comp = 0; comp < compCount; ++comp) {
        int base = -1;
        for (std::size_t i = 0; i < cx.cells0().size() && base < 0; ++i)
            if (ctx->compOf0[i] == comp) base = static_cast<int>(i);
        auto& out = ctx->comps[comp];
        out.base = base;

        std::vector<char> seen(cx.cells0().size(), 0);
        seen[base] = 1;
        std::deque<int> queue{base};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [cell, other, dir] : adj.at[v]) {
                if (seen[other]) continue;
                seen[other] = 1;
                isTree[cell] = 1;
                ctx->treeEdge[cell] = 1;
                parentStep[other] = dir > 0 ? cell + 1 : -(cell + 1);
                queue.push_back(other);
            }
        }
    }

    auto treePathFromBase = [&](int target, int base) {
        CellPath path;
        int v = target;
        while (v != base) {
            int enc = parentStep[v];
            int cell = std::abs(enc) - 1;
            int dir = enc > 0 ? +1 : -1;
            path.push_back({cell, dir});
            auto [a, b] = cx.boundary1()[cell];
            v = dir > 0 ? a : b;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    for (std::size_t cell = 0; cell < cx.cells1().size(); ++cell) {
        if (isTree[cell]) continue;
        auto [a, b] = cx.boundary1()[cell];
        int comp = ctx->compOf0[a];
        auto& out = ctx->comps[comp];
        int idx = static_cast<int>(out.gens.size());
        ctx->label[cell] = {letterOf(idx, +1)};
        // Witness: tree path to end0, the 1-cell itself, tree path back.
        CellPath loop = treePathFromBase(a, out.base);
        loop.push_back({static_cast<int>(cell), +1});
        auto back = treePathFromBase(b, out.base);
        loop.insert(loop.end(), back.rbegin(), back.rend());
        for (std::size_t i = loop.size() - back.size(); i < loop.size(); ++i)
            loop[i].second = -loop[i].second;
        out.gens.push_back({"", pathMotion(cx, out.base, loop)});
    }

    for (const auto& sides : cx.boundary2()) {
        int comp = ctx->compOf0[cx.boundary1()[sides[0].oneCell].first];
        Word relator;
        for (const auto& side : sides) {
            const Word& lab = ctx->label[side.oneCell];
            if (lab.empty()) continue;
            Word part = side.dir > 0 ? lab : inverseWord(lab);
            relator.insert(relator.end(), part.begin(), part.end());
        }
        relator = freeReduce(relator);
        if (!relator.empty()) ctx->comps[comp].relators.push_back(std::move(relator));
    }
    return ctx;
}

std::shared_ptr<const SpaceContext> Engine::replay(const Subgraph& s, int k,
                                                   const BuildOrder& order, bool topLevel) {
    Subgraph cur = graph_.emptySubgraph();
    for (int v : order.startPath) cur.vertex[v] = 1;
    for (std::size_t i = 0; i + 1 < order.startPath.size(); ++i) {
        int e = graph_.edgeBetween(order.startPath[i], order.startPath[i + 1], s);
        if (e < 0) throw std::logic_error("start path edge missing");
        cur.edge[e] = 1;
    }
    std::shared_ptr<const SpaceContext> ctx = directContext(cur, k);
    if (topLevel && trace_) trace_->steps.push_back({"base-case", -1, 0, 0, {}});

    for (const auto& step : order.steps) {
        Subgraph next = cur;
        next.edge[step.edge] = 1;
        auto ends = graph_.edge(step.edge);
        next.vertex[ends.u] = 1;
        next.vertex[ends.v] = 1;
        const char* opName = step.op == BuildStep::Op::AddHanging      ? "add-hanging"
                             : step.op == BuildStep::Op::StretchHanging ? "stretch-hanging"
                                                                        : "add-cycle";
        auto witness = options_.lightWitness ? step.witnessCycle : std::nullopt;
        ctx = glue(*ctx, next, step.edge, k, witness, topLevel ? opName : nullptr);
        cur = next;
    }
    return ctx;
}

Engine::DInfo Engine::subspaceInfo(const Subgraph& s, int k) {
    DInfo info;
    info.cx = CubeComplex::enumerate(graph_, s, k, false, 1, false);
    info.compOf0 = info.cx.componentOf0();
    int compCount = info.cx.componentCount();
    info.comps.resize(compCount);
    if (compCount == 0) return info;

    auto graphComps = graph_.componentSubgraphs(s);
    std::vector<int> graphCompOf(graph_.numVertices(), -1);
    for (std::size_t i = 0; i < graphComps.size(); ++i)
        for (int v = 0; v < graph_.numVertices(); ++v)
            if (graphComps[i].vertex[v]) graphCompOf[v] = static_cast<int>(i);

    for (int j = 0; j < compCount; ++j) {
        auto& dc = info.comps[j];
        for (std::size_t i = 0; i < info.cx.cells0().size() && dc.base0 < 0; ++i)
            if (info.compOf0[i] == j) dc.base0 = static_cast<int>(i);
        std::set<int> support;
        for (int v : info.cx.cells0()[dc.base0]) support.insert(graphCompOf[v]);
        dc.supportComps.assign(support.begin(), support.end());
    }

    if (graphComps.size() <= 1) {
        auto ctx = context(s, k);
        if (ctx->comps.size() != info.comps.size() ||
            ctx->cx.cells0().size() != info.cx.cells0().size())
            throw std::logic_error("skeleton/context component mismatch");
        for (int j = 0; j < compCount; ++j)
            for (const auto& gen : ctx->comps[j].gens)
                info.comps[j].loops.push_back(*gen.witness);
        return info;
    }

    // Disconnected: each component of the product space gets the lifted
    // generating loops of its factors, conjugated to the component base.
    for (int j = 0; j < compCount; ++j) {
        auto& dc = info.comps[j];
        const CubeCell& baseCell = info.cx.cells0()[dc.base0];
        for (int gi : dc.supportComps) {
            VertexConfig inFactor, parked;
            for (int v : baseCell)
                (graphCompOf[v] == gi ? inFactor : parked).push_back(v);
            auto fctx = context(graphComps[gi], static_cast<int>(inFactor.size()));
            int p = fctx->cx.index0(inFactor);
            if (p < 0) throw std::logic_error("factor projection missing");
            int fcomp = fctx->compOf0[p];
            int fbase = fctx->comps[fcomp].base;
            SkeletonAdjacency fadj(fctx->cx);
            auto toBase = pathMotion(fctx->cx, p,
                                     bfsPath(fadj, nullptr, nullptr, p, fbase));
            for (const auto& gen : fctx->comps[fcomp].gens) {
                Motion loop = liftMotion(toBase, parked);
                loop.append(liftMotion(*gen.witness, parked));
                loop.append(liftMotion(toBase.reversed(), parked));
                loop.pruneBacktracks();
                dc.loops.push_back(std::move(loop));
            }
        }
    }
    return info;
}

std::shared_ptr<const SpaceContext> Engine::glue(
    const SpaceContext& prev, const Subgraph& newMask, int edge, int k,
    const std::optional<std::vector<int>>& witnessCycle, const char* opName) {
    auto ends = graph_.edge(edge);
    int eCell = graph_.cellOfEdge(edge);
    bool treeGrowth = !prev.mask.vertex[ends.u] || !prev.mask.vertex[ends.v];
    int newVertex = !prev.mask.vertex[ends.u] ? ends.u
                    : !prev.mask.vertex[ends.v] ? ends.v
                                                : -1;

    CubeComplex X = CubeComplex::enumerate(graph_, newMask, k, false, 2, false);
    SkeletonAdjacency adj(X);
    std::vector<char> active(X.cells1().size(), 0);

    struct Block {
        int base = -1;
        std::vector<Generator> gens;
        std::vector<Word> relators;
        std::map<int, Word> labels;
        std::set<int> treeEdges;
    };
    std::vector<Block> blocks;
    std::vector<int> blockParent;  // union-find over blocks
    std::vector<int> blockOf0(X.cells0().size(), -1);
    auto rootOf = [&](int b) {
        while (blockParent[b] != b) b = blockParent[b] = blockParent[blockParent[b]];
        return b;
    };

    auto importPart = [&](const SpaceContext& part, int liftVertex) {
        int offset = static_cast<int>(blocks.size());
        int parts = static_cast<int>(part.comps.size());
        for (int c = 0; c < parts; ++c) {
            blocks.emplace_back();
            blockParent.push_back(offset + c);
        }
        for (std::size_t i = 0; i < part.cx.cells0().size(); ++i) {
            CubeCell cell = part.cx.cells0()[i];
            if (liftVertex >= 0) cell = insertedCell(cell, liftVertex);
            int x0 = X.index0(cell);
            if (x0 < 0) throw std::logic_error("imported 0-cell missing");
            blockOf0[x0] = offset + part.compOf0[i];
        }
        for (int c = 0; c < parts; ++c) {
            Block& b = blocks[offset + c];
            CubeCell baseCell = part.cx.cells0()[part.comps[c].base];
            if (liftVertex >= 0) baseCell = insertedCell(baseCell, liftVertex);
            b.base = X.index0(baseCell);
            b.relators = part.comps[c].relators;
            for (const auto& gen : part.comps[c].gens) {
                Motion lifted = liftVertex >= 0
                                    ? liftMotion(*gen.witness, {liftVertex})
                                    : *gen.witness;
                b.gens.push_back({"", std::move(lifted)});
            }
        }
        for (std::size_t f = 0; f < part.cx.cells1().size(); ++f) {
            CubeCell cell = part.cx.cells1()[f];
            if (liftVertex >= 0) cell = insertedCell(cell, liftVertex);
            int x1 = X.index1(cell);
            if (x1 < 0) throw std::logic_error("imported 1-cell missing");
            active[x1] = 1;
            int comp = part.compOf0[part.cx.boundary1()[f].first];
            Block& b = blocks[offset + comp];
            if (part.treeEdge[f]) b.treeEdges.insert(x1);
            if (!part.label[f].empty()) b.labels[x1] = part.label[f];
        }
    };

    importPart(prev, -1);
    if (treeGrowth) {
        auto part2 = context(prev.mask, k - 1);
        importPart(*part2, newVertex);
    }

    auto labelAt = [&](int cell) -> const Word* {
        int root = rootOf(blockOf0[X.boundary1()[cell].first]);
        auto it = blocks[root].labels.find(cell);
        return it == blocks[root].labels.end() ? nullptr : &it->second;
    };
    auto evalPath = [&](const CellPath& path) {
        Word out;
        for (auto [cell, dir] : path) {
            const Word* lab = labelAt(cell);
            if (!lab) continue;
            Word part = dir > 0 ? *lab : inverseWord(*lab);
            out.insert(out.end(), part.begin(), part.end());
        }
        return freeReduce(out);
    };
    auto motionPath = [&](const Motion& m) {
        CellPath path;
        for (std::size_t i = 0; i + 1 < m.frames.size(); ++i) {
            const auto& a = m.frames[i];
            const auto& b = m.frames[i + 1];
            std::vector<int> gone, came;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(gone));
            std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                                std::back_inserter(came));
            int ge = graph_.edgeBetween(gone[0], came[0], newMask);
            CubeCell cell;
            for (int v : a)
                if (v != gone[0]) cell.push_back(v);
            cell.push_back(graph_.cellOfEdge(ge));
            std::sort(cell.begin(), cell.end());
            int x1 = X.index1(cell);
            if (x1 < 0) throw std::logic_error("motion leaves the complex");
            int from0 = X.index0(a);
            path.push_back({x1, X.boundary1()[x1].first == from0 ? +1 : -1});
        }
        return path;
    };

    Subgraph dMask = graph_.complementOfNeighbourhood(edge, newMask);
    DInfo dinfo = subspaceInfo(dMask, k - 1);

    std::set<int> cycleVertices;
    if (witnessCycle) {
        for (int f : *witnessCycle) {
            cycleVertices.insert(graph_.edge(f).u);
            cycleVertices.insert(graph_.edge(f).v);
        }
    }
    std::vector<std::vector<int>> dGraphComps;
    {
        for (const auto& sub : graph_.componentSubgraphs(dMask)) {
            std::vector<int> vs;
            for (int v = 0; v < graph_.numVertices(); ++v)
                if (sub.vertex[v]) vs.push_back(v);
            dGraphComps.push_back(std::move(vs));
        }
    }
    std::vector<int> dGraphCompOf(graph_.numVertices(), -1);
    for (std::size_t i = 0; i < dGraphComps.size(); ++i)
        for (int v : dGraphComps[i]) dGraphCompOf[v] = static_cast<int>(i);

    int newGenCount = 0, mergeCount = 0;
    std::vector<Word> traceRelators;

    for (std::size_t j = 0; j < dinfo.comps.size(); ++j) {
        const auto& dc = dinfo.comps[j];
        const CubeCell& c = dinfo.cx.cells0()[dc.base0];

        // The light-independence condition: the witness cycle is vertex-disjoint
        // from every graph component carrying robots of this cylinder.
        bool lightOk = witnessCycle.has_value();
        if (lightOk) {
            for (int gi : dc.supportComps)
                for (int v : dGraphComps[gi])
                    if (cycleVertices.count(v)) lightOk = false;
        }

        int xa = X.index0(insertedCell(c, ends.u));
        int xb = X.index0(insertedCell(c, ends.v));
        int eOne = X.index1(insertedCell(c, eCell));
        if (xa < 0 || xb < 0 || eOne < 0) throw std::logic_error("cylinder base missing");
        int rootA = rootOf(blockOf0[xa]);
        int rootB = rootOf(blockOf0[xb]);

        CellPath eps = bfsPath(adj, &active, nullptr, blocks[rootA].base, xa);

        if (rootA != rootB) {
            // The cylinder joins two components; its base edge enters the tree.
            CellPath tau = bfsPath(adj, &active, nullptr, blocks[rootB].base, xb);
            bool keepA = X.cells0()[blocks[rootA].base] <= X.cells0()[blocks[rootB].base];
            int keepRoot = keepA ? rootA : rootB;
            int otherRoot = keepA ? rootB : rootA;
            const CellPath& pk = keepA ? eps : tau;
            const CellPath& po = keepA ? tau : eps;
            int endK = keepA ? xa : xb;
            int endO = keepA ? xb : xa;

            Block& keep = blocks[keepRoot];
            Block& other = blocks[otherRoot];
            int offset = static_cast<int>(keep.gens.size());

            Motion delta = pathMotion(X, keep.base, pk);
            delta.append(Motion{{X.cells0()[endK], X.cells0()[endO]}});
            delta.append(pathMotion(X, other.base, po).reversed());

            Word labK = evalPath(pk), labO = evalPath(po);
            for (auto& gen : other.gens) {
                Motion w = delta;
                w.append(*gen.witness);
                w.append(delta.reversed());
                w.pruneBacktracks();
                keep.gens.push_back({"", std::move(w)});
            }
            newGenCount += static_cast<int>(other.gens.size());
            for (auto& r : other.relators) keep.relators.push_back(shiftWord(r, offset));
            for (auto& [cell, lab] : other.labels)
                keep.labels[cell] = shiftWord(lab, offset);
            keep.treeEdges.insert(other.treeEdges.begin(), other.treeEdges.end());
            keep.treeEdges.insert(eOne);
            // Label so the connecting path delta evaluates to the identity.
            Word labKO = concatWords(inverseWord(labK), shiftWord(labO, offset));
            keep.labels[eOne] = endK == xa ? labKO : inverseWord(labKO);
            if (keep.labels[eOne].empty()) keep.labels.erase(eOne);
            active[eOne] = 1;
            other = Block{};
            blockParent[otherRoot] = keepRoot;
            ++mergeCount;

            int vK = endK == xa ? ends.u : ends.v;
            int vO = endK == xa ? ends.v : ends.u;
            for (const auto& loop : dc.loops) {
                CellPath lhs = pk;
                auto inner = motionPath(liftMotion(loop, {vK}));
                lhs.insert(lhs.end(), inner.begin(), inner.end());
                auto back = reversePath(pk);
                lhs.insert(lhs.end(), back.begin(), back.end());

                CellPath rhs = pk;
                rhs.push_back({eOne, endK == xa ? +1 : -1});
                auto inner2 = motionPath(liftMotion(loop, {vO}));
                rhs.insert(rhs.end(), inner2.begin(), inner2.end());
                rhs.push_back({eOne, endK == xa ? -1 : +1});
                rhs.insert(rhs.end(), back.begin(), back.end());

                Word relator = freeReduce(concatWords(evalPath(lhs), inverseWord(evalPath(rhs))));
                if (!relator.empty()) {
                    keep.relators.push_back(relator);
                    traceRelators.push_back(std::move(relator));
                }
            }
        } else {
            // Both cylinder bases in one component: a new generator appears.
            Block& b = blocks[rootA];
            CellPath tau;
            if (lightOk) {
                // tau follows eps and then walks the lone robot around the
                // witness cycle minus the new edge; relators become commutators.
                std::vector<int> walk{ends.u};
                {
                    std::set<int> rest(witnessCycle->begin(), witnessCycle->end());
                    rest.erase(edge);
                    int at = ends.u;
                    while (at != ends.v || !rest.empty()) {
                        bool advanced = false;
                        for (int f : rest) {
                            auto fe = graph_.edge(f);
                            if (fe.u == at || fe.v == at) {
                                at = fe.u == at ? fe.v : fe.u;
                                walk.push_back(at);
                                rest.erase(f);
                                advanced = true;
                                break;
                            }
                        }
                        if (!advanced) throw std::logic_error("witness cycle is not a cycle");
                    }
                }
                tau = eps;
                Motion around = constantMotion(X.cells0()[xa]);
                for (std::size_t i = 1; i < walk.size(); ++i)
                    around.frames.push_back(insertedConfig(c, walk[i]));
                auto aroundPath = motionPath(around);
                tau.insert(tau.end(), aroundPath.begin(), aroundPath.end());
            } else {
                tau = bfsPath(adj, &active, nullptr, b.base, xb);
            }

            int gidx = static_cast<int>(b.gens.size());
            Motion witness = pathMotion(X, b.base, eps);
            witness.append(Motion{{X.cells0()[xa], X.cells0()[xb]}});
            witness.append(pathMotion(X, b.base, tau).reversed());
            witness.pruneBacktracks();
            b.gens.push_back({"", std::move(witness)});
            ++newGenCount;

            Word lab = concatWords(inverseWord(evalPath(eps)),
                                   concatWords(Word{letterOf(gidx, +1)}, evalPath(tau)));
            b.labels[eOne] = lab;
            active[eOne] = 1;

            for (const auto& loop : dc.loops) {
                CellPath lhs = eps;
                auto inner = motionPath(liftMotion(loop, {ends.u}));
                lhs.insert(lhs.end(), inner.begin(), inner.end());
                auto back = reversePath(eps);
                lhs.insert(lhs.end(), back.begin(), back.end());
                Word w1 = evalPath(lhs);

                Word relator;
                if (lightOk) {
                    relator = concatWords(
                        concatWords(w1, Word{letterOf(gidx, +1)}),
                        concatWords(inverseWord(w1), Word{letterOf(gidx, -1)}));
                } else {
                    CellPath rhs = eps;
                    rhs.push_back({eOne, +1});
                    auto inner2 = motionPath(liftMotion(loop, {ends.v}));
                    rhs.insert(rhs.end(), inner2.begin(), inner2.end());
                    rhs.push_back({eOne, -1});
                    rhs.insert(rhs.end(), back.begin(), back.end());
                    relator = concatWords(w1, inverseWord(evalPath(rhs)));
                }
                relator = freeReduce(relator);
                if (!relator.empty()) {
                    b.relators.push_back(relator);
                    traceRelators.push_back(std::move(relator));
                }
            }
        }

        // Label the remaining lifted edges of this cylinder by parallel
        // transport across the square cells.
        {
            std::vector<char> seen(dinfo.cx.cells0().size(), 0);
            seen[dc.base0] = 1;
            SkeletonAdjacency dadj(dinfo.cx);
            std::deque<int> queue{dc.base0};
            auto eLabelOf = [&](int d0) -> Word {
                int x1 = X.index1(insertedCell(dinfo.cx.cells0()[d0], eCell));
                const Word* lab = labelAt(x1);
                return lab ? *lab : Word{};
            };
            while (!queue.empty()) {
                int d = queue.front();
                queue.pop_front();
                for (auto [f, d2, dir] : dadj.at[d]) {
                    if (seen[d2]) continue;
                    seen[d2] = 1;
                    // Square sides: lifted copies of f at each endpoint of the
                    // new edge, traversed d -> d2.
                    const CubeCell& fcell = dinfo.cx.cells1()[f];
                    int fu = X.index1(insertedCell(fcell, ends.u));
                    int fv = X.index1(insertedCell(fcell, ends.v));
                    int du0 = X.index0(insertedCell(dinfo.cx.cells0()[d], ends.u));
                    int dv0 = X.index0(insertedCell(dinfo.cx.cells0()[d], ends.v));
                    CellPath stepU{{fu, X.boundary1()[fu].first == du0 ? +1 : -1}};
                    CellPath stepV{{fv, X.boundary1()[fv].first == dv0 ? +1 : -1}};
                    Word lab = concatWords(
                        inverseWord(evalPath(stepU)),
                        concatWords(eLabelOf(d), evalPath(stepV)));
                    lab = freeReduce(lab);
                    int e2 = X.index1(insertedCell(dinfo.cx.cells0()[d2], eCell));
                    int root = rootOf(blockOf0[X.boundary1()[e2].first]);
                    if (!lab.empty()) blocks[root].labels[e2] = lab;
                    active[e2] = 1;
                    queue.push_back(d2);
                    (void)dir;
                }
            }
        }
    }

    for (char a : active)
        if (!a) throw std::logic_error("inactive 1-cell after gluing");

    // Assemble the finished context: renumber components by smallest 0-cell,
    // rebase merged blocks to their lexicographically smallest 0-cell.
    auto out = std::make_shared<SpaceContext>();
    out->mask = newMask;
    out->k = k;
    out->compOf0.assign(X.cells0().size(), -1);
    out->treeEdge.assign(X.cells1().size(), 0);
    out->label.assign(X.cells1().size(), {});

    std::vector<int> compOfRoot;
    std::vector<int> rootsInOrder;
    for (std::size_t i = 0; i < X.cells0().size(); ++i) {
        int root = rootOf(blockOf0[i]);
        int comp = -1;
        for (std::size_t r = 0; r < rootsInOrder.size(); ++r)
            if (rootsInOrder[r] == root) comp = static_cast<int>(r);
        if (comp < 0) {
            comp = static_cast<int>(rootsInOrder.size());
            rootsInOrder.push_back(root);
        }
        out->compOf0[i] = comp;
    }
    out->comps.resize(rootsInOrder.size());

    for (std::size_t comp = 0; comp < rootsInOrder.size(); ++comp) {
        Block& b = blocks[rootsInOrder[comp]];
        auto& target = out->comps[comp];
        int newBase = -1;
        for (std::size_t i = 0; i < X.cells0().size() && newBase < 0; ++i)
            if (out->compOf0[i] == static_cast<int>(comp)) newBase = static_cast<int>(i);
        if (newBase != b.base) {
            // Move the base: conjugate labels by the path word, witnesses by it.
            CellPath p = bfsPath(adj, nullptr, nullptr, b.base, newBase);
            Word kappa = evalPath(p);
            Motion pm = pathMotion(X, b.base, p);
            for (auto& gen : b.gens) {
                Motion w = pm.reversed();
                w.append(*gen.witness);
                w.append(pm);
                w.pruneBacktracks();
                gen.witness = std::move(w);
            }
            if (!kappa.empty())
                for (auto& [cell, lab] : b.labels) lab = conjugateWord(kappa, lab);
            b.base = newBase;
        }
        target.base = b.base;
        target.gens = std::move(b.gens);
        for (auto& r : b.relators) target.relators.push_back(freeReduce(r));
        for (int cell : b.treeEdges) out->treeEdge[cell] = 1;
        for (auto& [cell, lab] : b.labels) {
            Word reduced = freeReduce(lab);
            if (!reduced.empty()) out->label[cell] = std::move(reduced);
        }
    }
    out->cx = std::move(X);

    if (opName && trace_) {
        trace_->steps.push_back(
            {opName, edge, newGenCount, mergeCount, std::move(traceRelators)});
    }
    return out;
}

PresentResult Engine::present(int n) {
    if (!graph_.connected()) throw std::invalid_argument("graph must be connected");
    if (n <= 1) {
        // UD(G, 1) = G and UD(G, 0) is a point; no incremental build needed.
        PresentResult result;
        auto ctx = directContext(graph_.fullSubgraph(), n);
        result.context = ctx;
        Presentation p;
        if (!ctx->cx.cells0().empty()) {
            const auto& sc = ctx->comps[ctx->compOf0[0]];
            p.base = ctx->cx.cells0()[sc.base];
            p.generators = sc.gens;
            for (std::size_t i = 0; i < p.generators.size(); ++i)
                p.generators[i].name = "g" + std::to_string(i + 1);
            p.relators = sc.relators;
        }
        if (options_.simplify) {
            auto tz = tietzeSimplify(p);
            result.presentation = std::move(tz.presentation);
            result.dictionary = std::move(tz.dictionary);
        } else {
            result.presentation = std::move(p);
        }
        return result;
    }
    auto report = graph_.checkSubdivision(n);
    if (!report.ok) throw std::invalid_argument("graph fails the subdivision condition");

    std::optional<LightDecomposition> light;
    if (options_.lightWitness && n == 2 && graph_.firstBetti() > 0) {
        auto lr = graph_.lightDecompose();
        if (lr.ok()) light = lr.decomposition;
    }
    BuildOrder order = graph_.buildOrder(n, light);

    PresentResult result;
    trace_ = &result.trace;
    auto ctx = replay(graph_.fullSubgraph(), n, order, true);
    trace_ = nullptr;
    result.context = ctx;

    Presentation p;
    if (!ctx->cx.cells0().empty()) {
        int comp = ctx->compOf0[0];
        const auto& sc = ctx->comps[comp];
        p.base = ctx->cx.cells0()[sc.base];
        p.generators = sc.gens;
        for (std::size_t i = 0; i < p.generators.size(); ++i)
            p.generators[i].name = "g" + std::to_string(i + 1);
        p.relators = sc.relators;
    }
    if (options_.simplify) {
        auto tz = tietzeSimplify(p);
        result.presentation = std::move(tz.presentation);
        result.dictionary = std::move(tz.dictionary);
    } else {
        result.presentation = std::move(p);
    }
    return result;
}

Motion Engine::connect(const SpaceContext& ctx, int from0, int to0) const {
    if (ctx.compOf0[from0] != ctx.compOf0[to0])
        throw std::invalid_argument("0-cells lie in different components");
    if (graph_.connected(ctx.mask)) {
        try {
            return plan(graph_, ctx.mask, ctx.cx.cells0()[from0], ctx.cx.cells0()[to0])
                .motion;
        } catch (const PlanError&) {
            // fall through to skeleton search
        }
    }
    SkeletonAdjacency adj(ctx.cx);
    return pathMotion(ctx.cx, from0, bfsPath(adj, nullptr, nullptr, from0, to0));
}

}  // namespace gbg
