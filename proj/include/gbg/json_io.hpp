#pragma once

#include <json.hpp>

#include "gbg/complex.hpp"
#include "gbg/engine.hpp"
#include "gbg/graph.hpp"
#include "gbg/motion.hpp"
#include "gbg/oracle.hpp"
#include "gbg/planner.hpp"
#include "gbg/presentation.hpp"

namespace gbg {

using Json = nlohmann::json;

// Encoded cell -> human-readable name ("a" for vertices, "a-b" for edges).
std::string cellName(const Graph& g, int cell);

Json graphJson(const Graph& g);
Json configJson(const Graph& g, const VertexConfig& c);
Json motionJson(const Graph& g, const Motion& m);
Json complexJson(const Graph& g, const CubeComplex& cx);
Json surfaceJson(const SurfaceReport& r);
Json presentationJson(const Graph& g, const Presentation& p);
Json subdivisionReportJson(const Graph& g, const SubdivisionReport& r);
Json lightJson(const Graph& g, const Graph::LightResult& r);
Json planJson(const Graph& g, const PlanResult& r);
Json traceJson(const Graph& g, const Presentation& p, const EngineTrace& t);
Json h1Json(const AbelianInvariants& inv);

}  // namespace gbg
