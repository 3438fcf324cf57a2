// Command-line interface: graph checks, configuration-space enumeration,
// motion planning, presentations, and the brute-force cross-check.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbg/engine.hpp"
#include "gbg/json_io.hpp"
#include "gbg/oracle.hpp"
#include "gbg/planner.hpp"

using namespace gbg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitPrecondition = 3;

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionFailed : std::runtime_error {
    std::string payload;  // already-formatted report to print on stdout
    explicit PreconditionFailed(std::string what, std::string payload = {})
        : std::runtime_error(std::move(what)), payload(std::move(payload)) {}
};

Graph loadGraph(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw MalformedInput("cannot open graph file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Graph::parse(text);
    } catch (const std::exception& e) {
        throw MalformedInput(std::string("graph parse error: ") + e.what());
    }
}

VertexConfig parseConfig(const Graph& g, const std::string& csv) {
    std::vector<int> vertices;
    std::stringstream ss(csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto v = g.vertexId(name);
        if (!v) throw MalformedInput("unknown vertex: " + name);
        vertices.push_back(*v);
    }
    if (vertices.empty()) throw MalformedInput("empty configuration");
    auto c = makeConfig(vertices);
    if (c.size() != vertices.size()) throw MalformedInput("repeated vertex in configuration");
    return c;
}

std::string fVectorText(const std::vector<long long>& f) {
    std::string out = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(f[i]);
    }
    return out + ")";
}

std::string surfaceText(const SurfaceReport& r) {
    if (!r.isClosedSurface) return "surface: no";
    std::string out = "surface: closed, ";
    if (r.orientable)
        out += *r.orientable ? "orientable" : "non-orientable";
    else
        out += "orientability unknown";
    if (r.genus) out += ", genus " + std::to_string(*r.genus);
    return out;
}

std::string h1Text(const AbelianInvariants& inv) {
    std::string out = "H1 = ";
    if (inv.rank == 0 && inv.torsion.empty()) return out + "0";
    bool first = true;
    if (inv.rank > 0) {
        out += inv.rank == 1 ? "Z" : "Z^" + std::to_string(inv.rank);
        first = false;
    }
    for (long long t : inv.torsion) {
        if (!first) out += " + ";
        out += "Z/" + std::to_string(t);
        first = false;
    }
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph braid groups: configuration spaces, planning, presentations"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    int seed = 0;
    app.add_option("--seed", seed, "reserved for randomized harnesses");

    std::string graphPath;
    int robots = 2;
    bool strengthened = false, orderedFlag = false, simplify = false, traceFlag = false;
    bool autoSubdivide = false;
    std::string fromCsv, toCsv;

    auto addCommon = [&](CLI::App* cmd, bool needRobots) {
        cmd->add_option("graph", graphPath, "graph file ('-' for stdin)")->required();
        if (needRobots) cmd->add_option("--robots", robots, "number of robots")->required();
    };

    auto* cmdCheck = app.add_subcommand("check", "subdivision condition for n robots");
    addCommon(cmdCheck, true);
    cmdCheck->add_flag("--strengthened", strengthened, "strengthened n=2 condition");

    auto* cmdSubdivide = app.add_subcommand("subdivide", "subdivide so the n-check passes");
    addCommon(cmdSubdivide, true);

    auto* cmdCspace = app.add_subcommand("cspace", "enumerate the configuration space");
    addCommon(cmdCspace, true);
    cmdCspace->add_flag("--ordered", orderedFlag, "ordered configurations");

    auto* cmdPlan = app.add_subcommand("plan", "collision-free motion between configurations");
    addCommon(cmdPlan, true);
    cmdPlan->add_option("--from", fromCsv, "start configuration (comma-separated)")->required();
    cmdPlan->add_option("--to", toCsv, "goal configuration (comma-separated)")->required();

    auto* cmdPresent = app.add_subcommand("present", "presentation of the graph braid group");
    addCommon(cmdPresent, true);
    cmdPresent->add_flag("--simplify", simplify, "Tietze-simplify the presentation");
    cmdPresent->add_flag("--trace", traceFlag, "include the construction trace");
    cmdPresent->add_flag("--auto-subdivide", autoSubdivide,
                         "subdivide first if the n-check fails");

    auto* cmdOracle = app.add_subcommand("oracle", "brute-force presentation and homology");
    addCommon(cmdOracle, true);
    cmdOracle->add_flag("--ordered", orderedFlag, "ordered configurations");

    auto* cmdLight = app.add_subcommand("light", "light planar decomposition");
    addCommon(cmdLight, false);

    CLI11_PARSE(app, argc, argv);
    bool json = format == "json";

    try {
        Graph g = loadGraph(graphPath);
        if (robots < 0) throw MalformedInput("robot count must be >= 0");

        if (cmdCheck->parsed()) {
            auto report = g.checkSubdivision(robots, strengthened);
            if (json) {
                emit(subdivisionReportJson(g, report));
            } else if (report.ok) {
                std::cout << "ok\n";
            } else {
                for (const auto& v : report.violations) {
                    Json vj = subdivisionReportJson(g, {false, {v}})["violations"][0];
                    std::cout << vj["kind"].get<std::string>() << " length " << v.length
                              << ":";
                    for (const auto& c : vj["witness"]) std::cout << " " << c.get<std::string>();
                    std::cout << "\n";
                }
            }
            return report.ok ? kExitOk : kExitPrecondition;
        }

        if (cmdSubdivide->parsed()) {
            Graph sub = g.subdivideFor(robots).graph;
            if (json)
                emit(graphJson(sub));
            else
                std::cout << sub.toText();
            return kExitOk;
        }

        if (cmdCspace->parsed() || cmdOracle->parsed()) {
            CubeComplex cx = CubeComplex::enumerate(g, robots, orderedFlag);
            if (cmdCspace->parsed()) {
                if (json) {
                    emit(complexJson(g, cx));
                } else {
                    std::cout << "f = " << fVectorText(cx.fVector())
                              << ", χ = " << cx.eulerCharacteristic()
                              << ", components = " << cx.componentCount() << "\n"
                              << surfaceText(cx.surfaceCheck()) << "\n";
                }
                return kExitOk;
            }
            if (cx.cells0().empty()) throw Infeasible("configuration space is empty");
            auto oracle = pi1Presentation(cx, 0);
            auto h1 = oracleH1(cx, 0);
            if (json) {
                Json out = {{"schema", 1},
                            {"component", oracle.component},
                            {"presentation", presentationJson(g, oracle.presentation)},
                            {"h1", h1Json(h1)},
                            {"f_vector", cx.fVector()},
                            {"euler", cx.eulerCharacteristic()},
                            {"surface", surfaceJson(cx.surfaceCheck())}};
                emit(out);
            } else {
                std::cout << "f = " << fVectorText(cx.fVector())
                          << ", χ = " << cx.eulerCharacteristic()
                          << ", components = " << cx.componentCount() << "\n"
                          << surfaceText(cx.surfaceCheck()) << "\n"
                          << "generators = " << oracle.presentation.generators.size()
                          << ", relators = " << oracle.presentation.relators.size() << "\n"
                          << h1Text(h1) << "\n";
            }
            return kExitOk;
        }

        if (cmdPlan->parsed()) {
            VertexConfig from = parseConfig(g, fromCsv);
            VertexConfig to = parseConfig(g, toCsv);
            if (static_cast<int>(from.size()) != robots ||
                static_cast<int>(to.size()) != robots)
                throw MalformedInput("--from/--to must list exactly --robots vertices");
            PlanResult result;
            try {
                result = plan(g, from, to);
            } catch (const PlanError& e) {
                throw Infeasible(e.what());
            }
            if (json) {
                emit(planJson(g, result));
            } else {
                for (const auto& frame : result.motion.frames) {
                    for (std::size_t i = 0; i < frame.size(); ++i)
                        std::cout << (i ? "," : "") << g.vertexName(frame[i]);
                    std::cout << "\n";
                }
                std::cout << "moves = " << result.stats.moves
                          << ", elementary_ops = " << result.stats.elementaryOps << "\n";
            }
            return kExitOk;
        }

        if (cmdPresent->parsed()) {
            Graph work = g;
            bool subdivided = false;
            if (robots >= 2 && !work.checkSubdivision(robots).ok) {
                if (!autoSubdivide) {
                    auto report = work.checkSubdivision(robots);
                    std::string payload = json ? subdivisionReportJson(work, report).dump(2)
                                               : "subdivision check failed";
                    throw PreconditionFailed("graph fails the n-robot subdivision check",
                                             payload);
                }
                work = work.subdivideFor(robots).graph;
                subdivided = true;
            }
            if (!work.connected()) throw PreconditionFailed("graph must be connected");
            Engine engine(work, {.simplify = simplify});
            PresentResult r = engine.present(robots);
            if (json) {
                Json out = {{"schema", 1},
                            {"presentation", presentationJson(work, r.presentation)},
                            {"subdivided", subdivided}};
                if (subdivided) out["graph"] = graphJson(work);
                if (traceFlag) out["trace"] = traceJson(work, r.presentation, r.trace);
                emit(out);
            } else {
                if (subdivided) std::cout << "# subdivided graph:\n" << work.toText() << "\n";
                std::cout << r.presentation.toText();
                if (traceFlag) {
                    for (const auto& step : r.trace.steps) {
                        std::cout << "# " << step.op;
                        if (step.edge >= 0)
                            std::cout << " " << cellName(work, work.cellOfEdge(step.edge));
                        std::cout << ": +" << step.newGenerators << " generators, "
                                  << step.mergedComponents << " merges, "
                                  << step.newRelators.size() << " relators\n";
                    }
                }
            }
            return kExitOk;
        }

        if (cmdLight->parsed()) {
            auto result = g.lightDecompose();
            if (json)
                emit(lightJson(g, result));
            else if (result.ok()) {
                for (const auto& [edge, cycle] : result.decomposition->removed) {
                    std::cout << "remove " << cellName(g, g.cellOfEdge(edge)) << " cycle";
                    for (int e : cycle) std::cout << " " << cellName(g, g.cellOfEdge(e));
                    std::cout << "\n";
                }
            } else {
                std::cout << "not light; witness cycle:";
                for (int e : result.failure->witnessCycle)
                    std::cout << " " << cellName(g, g.cellOfEdge(e));
                std::cout << "\n";
            }
            return result.ok() ? kExitOk : kExitInfeasible;
        }
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const Infeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const PreconditionFailed& e) {
        if (!e.payload.empty()) std::cout << e.payload << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}
