#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "gbg/graph.hpp"
#include "test_graphs.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exitCode;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GBG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string writeGraph(const gbg::Graph& g, const std::string& name) {
    std::string path = "/tmp/gbg_cli_" + name + ".g";
    std::ofstream(path) << g.toText();
    return path;
}

bool contains(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cspace text output matches the documented example") {
    auto path = writeGraph(gbgtest::triod(), "triod");
    auto r = run("cspace " + path + " --robots 2");
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "f = (6, 6, 0), χ = 0, components = 1"));
}

TEST_CASE("cspace json output carries the schema and f-vector") {
    auto path = writeGraph(gbgtest::triod(), "triod");
    auto r = run("--format json cspace " + path + " --robots 2");
    CHECK(r.exitCode == 0);
    json j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["f_vector"] == json({6, 6, 0}));
    CHECK(j["components"] == 1);
    CHECK(j["cells0"].size() == 6);
    CHECK(j["boundary1"].size() == 6);
}

TEST_CASE("present: text, json, and the precondition exit code") {
    auto path = writeGraph(gbgtest::triod(), "triod");
    auto r = run("present " + path + " --robots 2 --simplify");
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "gen g1"));
    CHECK(!contains(r.out, "rel "));

    auto rj = run("--format json present " + path + " --robots 2 --simplify --trace");
    CHECK(rj.exitCode == 0);
    json j = json::parse(rj.out);
    CHECK(j["presentation"]["generators"].size() == 1);
    CHECK(j["presentation"]["relators"].empty());
    CHECK(j["presentation"]["generators"][0]["witness"]["frames"].size() >= 3);
    CHECK(j["trace"]["steps"].size() >= 1);

    auto k5 = writeGraph(gbgtest::completeGraph(5), "k5");
    CHECK(run("present " + k5 + " --robots 2").exitCode == 3);
    CHECK(run("present " + k5 + " --robots 2 --auto-subdivide").exitCode == 0);
}

TEST_CASE("oracle reports the surface data for ordered K5") {
    auto k5 = writeGraph(gbgtest::completeGraph(5), "k5");
    auto r = run("oracle " + k5 + " --robots 2 --ordered");
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "f = (20, 60, 30), χ = -10"));
    CHECK(contains(r.out, "surface: closed, orientable, genus 6"));
    CHECK(contains(r.out, "H1 = Z^12"));
}

TEST_CASE("plan: output, trivial instance, and error exit codes") {
    auto path = writeGraph(gbgtest::triod(), "triod");
    auto r = run("--format json plan " + path + " --robots 2 --from v,v2 --to v2,v3");
    CHECK(r.exitCode == 0);
    json j = json::parse(r.out);
    CHECK(j["frames"].size() >= 2);
    CHECK(j["stats"]["elementary_ops"].get<long long>() > 0);

    auto trivial = run("--format json plan " + path + " --robots 2 --from v,v2 --to v,v2");
    CHECK(trivial.exitCode == 0);
    CHECK(json::parse(trivial.out)["frames"].size() == 1);

    CHECK(run("plan " + path + " --robots 2 --from v,zz --to v2,v3").exitCode == 1);
    // The goal puts a robot in another component: infeasible instance.
    auto split = writeGraph(gbg::Graph::fromNamedEdges({}, {{"a", "b"}, {"c", "d"}}), "split");
    CHECK(run("plan " + split + " --robots 2 --from a,b --to a,c").exitCode == 2);
}

TEST_CASE("subdivide output re-parses to the internal subdivision") {
    gbg::Graph g = gbgtest::completeGraph(4);
    auto path = writeGraph(g, "k4");
    auto r = run("subdivide " + path + " --robots 2");
    CHECK(r.exitCode == 0);
    gbg::Graph expected = g.subdivideFor(2).graph;
    CHECK(gbg::Graph::parse(r.out).toText() == expected.toText());
    CHECK(gbg::Graph::parse(r.out).checkSubdivision(2).ok);
}

TEST_CASE("check and light subcommands") {
    auto k5 = writeGraph(gbgtest::completeGraph(5), "k5");
    CHECK(run("check " + k5 + " --robots 2").exitCode == 3);
    auto path = writeGraph(gbgtest::triod(), "triod");
    auto ok = run("check " + path + " --robots 2");
    CHECK(ok.exitCode == 0);
    CHECK(contains(ok.out, "ok"));

    auto dumb = writeGraph(gbgtest::dumbbell(), "dumbbell");
    auto light = run("--format json light " + dumb);
    CHECK(light.exitCode == 0);
    json j = json::parse(light.out);
    CHECK(j["ok"] == true);
    CHECK(j["removed"].size() == 2);
    CHECK(run("light " + k5).exitCode == 2);
}

TEST_CASE("malformed input exits 1") {
    std::ofstream("/tmp/gbg_cli_bad.g") << "e a\n";
    CHECK(run("cspace /tmp/gbg_cli_bad.g --robots 2").exitCode == 1);
    CHECK(run("cspace /tmp/gbg_cli_missing.g --robots 2").exitCode == 1);
}
