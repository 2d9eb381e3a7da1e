#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "depthlab/errors.hpp"

using namespace depthlab;
using namespace depthlab::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run depthlab_run(std::vector<std::string> args)
{
    args.insert(args.begin(), "depthlab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const std::string path = "/tmp/depthlab_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("depth command")
{
    const auto r = depthlab_run({"depth", "--group", "S4", "--subgroup", "S3"});
    REQUIRE(r.code == kOk);
    const auto j = r.json();
    CHECK(j["tool"] == "depthlab");
    CHECK(j["version"] == DEPTHLAB_VERSION);
    CHECK(j["seed"] == 1);
    CHECK(j["caps"]["order"] == 10000);
    CHECK(j["caps"]["points"] == 1000000);
    const auto& rep = j["report"];
    CHECK(rep["prime"].get<std::uint64_t>() > 0);
    CHECK(rep["depth"]["d_min"] == 5);
    CHECK(rep["depth"]["d_h"] == 7);
    CHECK(rep["ell_QR"] == 2);
    CHECK(rep["ell_QH"] == 3);
    CHECK(rep["verified"] == true);
    for (const auto& o : rep["oracle"])
        CHECK(o["pattern_agrees"] == true);

    CHECK(depthlab_run({"depth", "--group", "C6", "--subgroup", "C6"}).json()["report"]["depth"]["d_min"] == 1);
    const auto a4 = depthlab_run({"depth", "--group", "S4", "--subgroup", "A4"}).json()["report"];
    CHECK(a4["depth"]["d_min"] == 2);
    CHECK(a4["normal"] == true);

    const auto seeded = depthlab_run({"depth", "--group", "S3", "--subgroup", "S2", "--seed", "42"});
    CHECK(seeded.json()["seed"] == 42);
}

TEST_CASE("DOT output labels edges with multiplicities")
{
    const auto r = depthlab_run({"depth", "--group", "S3", "--subgroup", "trivial", "--format", "dot"});
    REQUIRE(r.code == kOk);
    CHECK(r.out.rfind("graph ", 0) == 0);
    CHECK(r.out.find("r0 -- c2 [label=\"2\"]") != std::string::npos);
    CHECK(r.out.find("r0 -- c0 [label=\"1\"]") != std::string::npos);
    // One edge per nonzero entry, no parallel edges.
    std::size_t edges = 0;
    for (std::size_t p = r.out.find(" -- "); p != std::string::npos; p = r.out.find(" -- ", p + 1))
        ++edges;
    CHECK(edges == 3);

    const auto tower = depthlab_run({"tower", "--group", "S4", "--subgroup", "S3", "--format", "dot"});
    CHECK(tower.code == kOk);
    CHECK(tower.out.find("cluster_1") != std::string::npos);
    CHECK(tower.out.find("L1_r0 -- L1_c0") != std::string::npos);
    CHECK(depthlab_run({"corpus", "--format", "dot"}).code == kInput);
}

TEST_CASE("--out writes the report")
{
    const std::string path = "/tmp/depthlab_test_out.json";
    std::remove(path.c_str());
    const auto r = depthlab_run({"depth", "--group", "S3", "--subgroup", "A3", "--out", path});
    CHECK(r.code == kOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(Json::parse(ss.str())["report"]["depth"]["d_min"] == 2);
    CHECK(depthlab_run({"depth", "--group", "S3", "--subgroup", "A3", "--out", "/nonexistent/dir/x.json"}).code ==
          kInput);
}

TEST_CASE("tower command")
{
    const auto two = depthlab_run({"tower", "--group", "S4", "--subgroup", "S3", "--steps", "2"}).json();
    REQUIRE(two["levels"].size() == 2);
    CHECK(two["levels"][0]["depth"]["d_min"] == 5);
    CHECK(two["levels"][1]["depth"]["d_min"] == 6);

    const auto four = depthlab_run({"tower", "--group", "S4", "--subgroup", "S3", "--steps", "4"}).json();
    CHECK(four["levels"][0]["depth"] == four["levels"][2]["depth"]);
    CHECK(four["levels"][0]["matrix"] == four["levels"][2]["matrix"]);
    CHECK(four["period_two"] == true);
    CHECK(four["morita"]["passed"] == true);

    const auto equal = depthlab_run({"tower", "--group", "S3", "--subgroup", "S3", "--steps", "3"}).json();
    for (const auto& level : equal["levels"])
        CHECK(level["depth"]["d_min"] == 1);
    CHECK(depthlab_run({"tower", "--group", "S4", "--subgroup", "S3", "--steps", "0"}).code == kInput);
}

TEST_CASE("hc command")
{
    const auto field = depthlab_run({"hc", "--algebra", "builtin:field", "--degree", "2"});
    REQUIRE(field.code == kOk);
    const auto j = field.json();
    CHECK(j["HC"]["base"] == Json({1, 0, 1}));
    CHECK(j["HC"]["extended"] == Json({1, 0, 1}));
    CHECK(j["caps"]["ambient"] == 5000);

    const auto dual = depthlab_run({"hc", "--algebra", "builtin:dual", "--degree", "0", "--m", "2"}).json();
    CHECK(dual["HC"]["base"] == dual["HC"]["extended"]);
    CHECK(dual["HC"]["base"] == Json({2}));
    CHECK(dual["dennis_trace"][0]["bijective"] == true);

    const auto file = temp_file("dual.alg", "dim 2\nlabels 1 x\nunit 1 0\nc 0 0 0 1\nc 0 1 1 1\nc 1 0 1 1\n");
    CHECK(depthlab_run({"hc", "--algebra", file, "--degree", "1"}).json()["HC"]["base"] == Json({2, 0}));

    const auto bad = temp_file("bad.alg", "dim 2\nunit 1 0\nc 0 0 0 one\n");
    const auto r = depthlab_run({"hc", "--algebra", bad});
    CHECK(r.code == kInput);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(depthlab_run({"hc", "--algebra", "/nonexistent.alg"}).code == kInput);
    CHECK(depthlab_run({"hc", "--algebra", "builtin:dual", "--degree", "3"}).code == kResource);
}

TEST_CASE("exit codes for inputs and caps")
{
    CHECK(depthlab_run({}).code == kInput);
    CHECK(depthlab_run({"depth", "--group", "S4"}).code == kInput);
    CHECK(depthlab_run({"depth", "--group", "X4", "--subgroup", "S3"}).code == kInput);
    CHECK(depthlab_run({"depth", "--group", "S4", "--subgroup", "perm:(1 5)"}).code == kInput);
    CHECK(depthlab_run({"depth", "--group", "S4", "--subgroup", "S3", "--format", "xml"}).code == kInput);
    CHECK(depthlab_run({"depth", "--group", "S5", "--subgroup", "S4", "--cap-order", "100"}).code == kResource);
    CHECK(depthlab_run({"depth", "--group", "S4", "--subgroup", "S3", "--cap-order", "0"}).code == kInput);

    // Beyond the point cap the oracle is skipped, not failed.
    const auto skipped = depthlab_run({"depth", "--group", "S4", "--subgroup", "S3", "--cap-points", "50"});
    CHECK(skipped.code == kOk);
    CHECK(skipped.json()["report"]["oracle"].back()["skipped"] == "point cap");
    CHECK(depthlab_run({"--version"}).code == kOk);
}

TEST_CASE("corpus command")
{
    const auto r = depthlab_run({"corpus"});
    REQUIRE(r.code == kOk);
    const auto j = r.json();
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["entries"].size() == builtin_corpus(false).size());
    for (const auto& e : j["entries"])
        if (e.contains("expected"))
            CHECK(e.contains("source"));

    SUBCASE("injected wrong expected value")
    {
        const auto path = temp_file(
            "wrong.json", R"([{"group": "S4", "subgroup": "S3", "expect": {"d_min": 4}, "source": "injected"}])");
        const auto w = depthlab_run({"corpus", "--corpus", path});
        CHECK(w.code == kVerification);
        const auto e = w.json()["entries"][0];
        CHECK(e["ok"] == false);
        CHECK(e["verification"]["expected_d_min"] == false);
        CHECK(e["expected"]["d_min"]["actual"] == 5);
    }
    SUBCASE("empty or malformed corpus files")
    {
        CHECK(depthlab_run({"corpus", "--corpus", temp_file("empty.json", "")}).code == kInput);
        CHECK(depthlab_run({"corpus", "--corpus", temp_file("blank.json", "  \n")}).code == kInput);
        CHECK(depthlab_run({"corpus", "--corpus", temp_file("none.json", "[]")}).code == kInput);
        CHECK(depthlab_run({"corpus", "--corpus", temp_file("obj.json", "{}")}).code == kInput);
        CHECK(depthlab_run({"corpus", "--corpus", "/nonexistent.json"}).code == kInput);
        CHECK_THROWS_AS(parse_corpus(R"([{"group": "S4"}])"), InputError);
        CHECK_THROWS_AS(parse_corpus(R"([{"group": "S4", "subgroup": "S3", "expect": {"d_min": 5}}])"), InputError);
        CHECK_THROWS_AS(parse_corpus(R"([{"group": "S4", "subgroup": "S3", "expect": {"depth": 5}, "source": "x"}])"),
                        InputError);
    }
    SUBCASE("an entry error is reported with its category")
    {
        const auto path = temp_file("mixed.json", R"([{"group": "S4", "subgroup": "S3"}, {"group": "S4", "subgroup": "Z9"}])");
        const auto m = depthlab_run({"corpus", "--corpus", path});
        CHECK(m.code == kInput);
        CHECK(m.json()["entries"][0]["ok"] == true);
        CHECK(m.json()["entries"][1].contains("error"));
    }
}

TEST_CASE("property: corpus reports are byte-identical across runs and thread counts")
{
    const auto a = depthlab_run({"corpus", "--seed", "7", "--threads", "1"});
    const auto b = depthlab_run({"corpus", "--seed", "7", "--threads", "4"});
    const auto c = depthlab_run({"corpus", "--seed", "7"});
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}
