#include "tropint_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

const std::string data = TROPINT_DATA_DIR;

struct CliRun {
    int code;
    std::string out;
    tropical::Json json() const { return tropical::Json::parse(out); }
};

CliRun tropint_run(std::vector<std::string> args) {
    args.insert(args.begin(), "tropint");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = tropint::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::string file(const std::string& name) { return data + "/" + name; }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("tropint_test_" + name)).string();
}

} // namespace

TEST(Cli, ValidateExitCodes) {
    EXPECT_EQ(tropint_run({"validate", file("delta1.json")}).code, 0);
    EXPECT_EQ(tropint_run({"validate", file("c1.json")}).code, 0);
    EXPECT_EQ(tropint_run({"validate", file("line.json")}).code, 0);
    auto bad = tropint_run({"validate", file("unbalanced.json")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.json()["violations"].size(), 1u);
    EXPECT_FALSE(bad.json()["valid"].get<bool>());
    EXPECT_EQ(tropint_run({"validate", file("unbalanced_line.json")}).code, 1);
    EXPECT_EQ(tropint_run({"validate", file("bad_fan.json")}).code, 1);
    EXPECT_EQ(tropint_run({"validate", file("malformed.json")}).code, 2);
    EXPECT_EQ(tropint_run({"validate", file("does_not_exist.json")}).code, 2);
    EXPECT_EQ(tropint_run({"frobnicate"}).code, 2);
}

TEST(Cli, CupExample) {
    auto r = tropint_run({"cup", file("c1.json"), file("c2.json")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["degree"], 3);
    auto unit = tropint_run({"cup", file("unit_delta1.json"), file("c1.json")});
    ASSERT_EQ(unit.code, 0);
    auto c1 = tropint_run({"refine", file("c1.json"), file("delta1.json")});
    EXPECT_EQ(unit.json()["entries"], c1.json()["entries"]);
}

TEST(Cli, ArCheckEquiv) {
    auto r = tropint_run({"ar", "--check-equiv", file("c1.json"), file("c2.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["degree"], 3);
    EXPECT_TRUE(r.json()["equivalent"].get<bool>());
    auto lines = tropint_run({"ar", "--check-equiv", file("line.json"), file("line_shifted.json")});
    EXPECT_EQ(lines.code, 0);
    EXPECT_EQ(lines.json()["degree"], 1);
}

TEST(Cli, StableSelfIntersection) {
    auto r = tropint_run({"stable", file("line.json"), file("line.json")});
    ASSERT_EQ(r.code, 0);
    auto j = r.json();
    EXPECT_EQ(j["degree"], 1);
    ASSERT_EQ(j["cells"].size(), 1u);
    EXPECT_EQ(j["cells"][0]["vertices"][0], tropical::Json::parse(R"(["0","0"])"));
    EXPECT_EQ(j["weights"][0]["weight"], 1);
}

TEST(Cli, DivisorConventions) {
    auto k = tropint_run({"divisor", file("unit_delta1.json"), file("min_xy.json")});
    auto a = tropint_run({"divisor", "--convention", "ar", file("unit_delta1.json"), file("min_xy.json")});
    ASSERT_EQ(k.code, 0);
    ASSERT_EQ(a.code, 0);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(k.json()["entries"][i]["weight"], 1);
        EXPECT_EQ(a.json()["entries"][i]["weight"], -1);
    }
    auto c = tropint_run({"divisor", file("line.json"), file("min_0_x_y.json")});
    EXPECT_EQ(c.json()["degree"], 2);
    EXPECT_EQ(tropint_run({"divisor", "--convention", "neither", file("line.json"), file("min_0_x_y.json")}).code, 2);
}

TEST(Cli, Star) {
    auto r = tropint_run({"star", "--cell", "3", file("line_with_vertex.json")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["codim"], 1);
    EXPECT_EQ(r.json()["entries"].size(), 3u);
    EXPECT_EQ(tropint_run({"star", "--cell", "9", file("line_with_vertex.json")}).code, 1);
}

TEST(Cli, RefineCycle) {
    auto r = tropint_run({"refine", file("line.json"), "--hyperplane", "1,0:2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["cells"].size(), 4u);
    EXPECT_EQ(tropint_run({"refine", file("line.json"), "--hyperplane", "1,0,0:2"}).code, 1);
}

TEST(Cli, Psi) {
    auto degree = [](const CliRun& r) { return r.json()["entries"][0]["degree"].get<std::string>(); };
    EXPECT_EQ(degree(tropint_run({"psi", "4", "1"})), "1");
    EXPECT_EQ(degree(tropint_run({"psi", "5", "1", "2"})), "2");
    EXPECT_EQ(degree(tropint_run({"psi", "6", "1", "2", "3"})), "6");
    EXPECT_EQ(tropint_run({"psi", "5", "1"}).code, 1);
    auto all = tropint_run({"psi", "5", "--all", "--raw"});
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(all.json()["entries"].size(), 15u);
    EXPECT_EQ(all.json()["entries"][0]["raw_degree"], 36); // 1 * C(4,2)^2
}

TEST(Cli, DeterministicOutput) {
    std::string p1 = temp_path("a.json"), p2 = temp_path("b.json");
    for (std::uint64_t seed : {0u, 9u}) {
        auto s = std::to_string(seed);
        EXPECT_EQ(tropint_run({"--seed", s, "--output", p1, "stable", file("line.json"), file("line_half.json")}).code, 0);
        EXPECT_EQ(tropint_run({"--seed", s, "--output", p2, "stable", file("line.json"), file("line_half.json")}).code, 0);
        std::ifstream a(p1), b(p2);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        EXPECT_FALSE(sa.str().empty());
        EXPECT_EQ(sa.str(), sb.str());
    }
}

TEST(Cli, OutputsRevalidate) {
    std::vector<std::vector<std::string>> cmds{
        {"cup", file("c1.json"), file("c2.json")},
        {"ar", file("c1.json"), file("c2.json")},
        {"ar", file("line.json"), file("reflected_line.json")},
        {"stable", file("line.json"), file("line_shifted.json")},
        {"divisor", file("unit_delta1.json"), file("min_xy.json")},
        {"divisor", file("line.json"), file("min_0_x_y.json")},
        {"star", "--cell", "3", file("line_with_vertex.json")},
        {"refine", file("c2.json"), file("delta1.json")},
        {"refine", file("delta1.json"), file("delta2.json")},
        {"refine", file("line.json"), "--hyperplane", "0,1:-1"},
    };
    for (auto cmd : cmds) {
        std::string out = temp_path("revalidate.json");
        cmd.insert(cmd.begin(), {"--output", out});
        ASSERT_EQ(tropint_run(cmd).code, 0) << cmd[2];
        auto v = tropint_run({"validate", out});
        EXPECT_EQ(v.code, 0) << cmd[2] << ": " << v.out;
    }
}
