#include "gbg/json_io.hpp"

namespace gbg {

namespace {

constexpr int kSchemaVersion = 1;

Json wordJson(const Word& w) {
    Json out = Json::array();
    for (int letter : w)
        out.push_back(std::string("g") + std::to_string(genOf(letter) + 1) +
                      (expOf(letter) < 0 ? "^-1" : ""));
    return out;
}

}  // namespace

std::string cellName(const Graph& g, int cell) {
    if (cell < g.numVertices()) return g.vertexName(cell);
    auto e = g.edge(cell - g.numVertices());
    return g.vertexName(e.u) + "-" + g.vertexName(e.v);
}

Json graphJson(const Graph& g) {
    Json vertices = Json::array();
    for (int v = 0; v < g.numVertices(); ++v) vertices.push_back(g.vertexName(v));
    Json edges = Json::array();
    for (int e = 0; e < g.numEdges(); ++e) {
        auto ends = g.edge(e);
        edges.push_back({g.vertexName(ends.u), g.vertexName(ends.v)});
    }
    return {{"schema", kSchemaVersion}, {"vertices", vertices}, {"edges", edges}};
}

Json configJson(const Graph& g, const VertexConfig& c) {
    Json out = Json::array();
    for (int v : c) out.push_back(g.vertexName(v));
    return out;
}

Json motionJson(const Graph& g, const Motion& m) {
    Json frames = Json::array();
    for (const auto& f : m.frames) frames.push_back(configJson(g, f));
    return {{"schema", kSchemaVersion}, {"moves", m.moves()}, {"frames", frames}};
}

Json surfaceJson(const SurfaceReport& r) {
    Json out = {{"closed_surface", r.isClosedSurface}, {"euler", r.euler}};
    out["orientable"] = r.orientable ? Json(*r.orientable) : Json();
    out["genus"] = r.genus ? Json(*r.genus) : Json();
    return out;
}

Json complexJson(const Graph& g, const CubeComplex& cx) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["ordered"] = cx.ordered();
    out["robots"] = cx.robots();
    out["f_vector"] = cx.fVector();
    out["euler"] = cx.eulerCharacteristic();
    out["components"] = cx.componentCount();
    Json cells0 = Json::array();
    for (const auto& c : cx.cells0()) cells0.push_back(configJson(g, c));
    out["cells0"] = cells0;
    auto cellsJson = [&](const std::vector<CubeCell>& cells) {
        Json arr = Json::array();
        for (const auto& c : cells) {
            Json one = Json::array();
            for (int cell : c) one.push_back(cellName(g, cell));
            arr.push_back(one);
        }
        return arr;
    };
    out["cells1"] = cellsJson(cx.cells1());
    out["cells2"] = cellsJson(cx.cells2());
    Json b1 = Json::array();
    for (auto [a, b] : cx.boundary1()) b1.push_back({a, b});
    out["boundary1"] = b1;
    Json b2 = Json::array();
    for (const auto& sides : cx.boundary2()) {
        Json circuit = Json::array();
        for (const auto& side : sides)
            circuit.push_back({{"one_cell", side.oneCell}, {"dir", side.dir}});
        b2.push_back(circuit);
    }
    out["boundary2"] = b2;
    out["surface"] = surfaceJson(cx.surfaceCheck());
    return out;
}

Json presentationJson(const Graph& g, const Presentation& p) {
    Json gens = Json::array();
    for (const auto& gen : p.generators) {
        Json one = {{"name", gen.name}};
        one["witness"] = gen.witness ? motionJson(g, *gen.witness) : Json();
        gens.push_back(one);
    }
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(wordJson(r));
    Json out = {{"schema", kSchemaVersion}, {"generators", gens}, {"relators", rels}};
    out["base"] = p.base ? configJson(g, *p.base) : Json();
    return out;
}

Json subdivisionReportJson(const Graph& g, const SubdivisionReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        const char* kind = v.kind == SubdivisionViolation::Kind::EssentialPath ? "essential_path"
                           : v.kind == SubdivisionViolation::Kind::EssentialCycle
                               ? "essential_cycle"
                           : v.kind == SubdivisionViolation::Kind::Loop ? "loop"
                                                                        : "multi_edge";
        Json cells = Json::array();
        for (int c : v.witnessCells) cells.push_back(cellName(g, c));
        violations.push_back({{"kind", kind}, {"length", v.length}, {"witness", cells}});
    }
    return {{"schema", kSchemaVersion}, {"ok", r.ok}, {"violations", violations}};
}

Json lightJson(const Graph& g, const Graph::LightResult& r) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["ok"] = r.ok();
    auto edgeName = [&](int e) { return cellName(g, g.cellOfEdge(e)); };
    if (r.decomposition) {
        Json removed = Json::array();
        for (const auto& [edge, cycle] : r.decomposition->removed) {
            Json cyc = Json::array();
            for (int e : cycle) cyc.push_back(edgeName(e));
            removed.push_back({{"edge", edgeName(edge)}, {"cycle", cyc}});
        }
        out["removed"] = removed;
        Json tree = Json::array();
        for (int e = 0; e < g.numEdges(); ++e)
            if (r.decomposition->residualTree.edge[e]) tree.push_back(edgeName(e));
        out["residual_tree"] = tree;
    } else if (r.failure) {
        Json cyc = Json::array();
        for (int e : r.failure->witnessCycle) cyc.push_back(edgeName(e));
        out["failure_cycle"] = cyc;
    }
    return out;
}

Json planJson(const Graph& g, const PlanResult& r) {
    Json out = motionJson(g, r.motion);
    out["stats"] = {{"moves", r.stats.moves}, {"elementary_ops", r.stats.elementaryOps}};
    return out;
}

Json traceJson(const Graph& g, const Presentation& p, const EngineTrace& t) {
    (void)p;
    Json steps = Json::array();
    for (const auto& step : t.steps) {
        Json one = {{"op", step.op},
                    {"new_generators", step.newGenerators},
                    {"merged_components", step.mergedComponents}};
        one["edge"] = step.edge >= 0 ? Json(cellName(g, g.cellOfEdge(step.edge))) : Json();
        Json rels = Json::array();
        for (const auto& r : step.newRelators) rels.push_back(wordJson(r));
        one["relators_as_emitted"] = rels;
        steps.push_back(one);
    }
    return {{"schema", kSchemaVersion}, {"steps", steps}};
}

Json h1Json(const AbelianInvariants& inv) {
    return {{"rank", inv.rank}, {"torsion", inv.torsion}};
}

}  // namespace gbg
