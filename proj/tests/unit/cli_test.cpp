#include "test_support.hpp"

#include "oddjac/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace oddjac;
using namespace oddjac::test;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(ODDJAC_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("oddjac_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, EmittedExamplesVerify) {
    struct Case {
        std::vector<std::string> args;
        std::string file;
    };
    std::vector<Case> cases{
        {{"example", "odd-contact", "--n", "2", "--emit", path("c.sj")}, "c.sj"},
        {{"example", "de-rham", "--dim", "2", "--emit", path("d.sj")}, "d.sj"},
        {{"example", "lie-schouten", fixture("affine2.sc"), "--emit", path("s.sj"), "--emit-q", path("q.sj")}, "s.sj"},
        {{"example", "odd-symplectic", fixture("omega_canonical.sj"), "--emit", path("w.sj")}, "w.sj"},
    };
    for (const auto& c : cases) {
        auto r = run(c.args);
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_EQ(run({"verify", path(c.file)}).code, 0) << c.file;
    }
    EXPECT_EQ(run({"verify", path("q.sj")}).code, 0);
}

TEST_F(CliTest, EmittedContactSupportsEveryCommand) {
    ASSERT_EQ(run({"example", "odd-contact", "--emit", path("c.sj")}).code, 0);
    auto b = run({"bracket", path("c.sj"), "--f", "f1", "--g", "one"});
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("= x1\n"), std::string::npos) << b.out;
    EXPECT_EQ(run({"hvf", path("c.sj"), "--f", "f1"}).code, 0);
    EXPECT_EQ(run({"brst", path("c.sj"), "--s", "s_gauge"}).code, 0);
    EXPECT_EQ(run({"gauge", path("c.sj"), "--s", "s_gauge"}).code, 0);
    EXPECT_EQ(run({"gauge", path("c.sj"), "--s", "s_open"}).code, 1);
    EXPECT_EQ(run({"props", path("c.sj"), "--samples", "10"}).code, 0);
    auto p = run({"poisson", path("c.sj"), "--F", "p_x1", "--G", "x1^2"});
    EXPECT_EQ(p.code, 0);
    EXPECT_NE(p.out.find("= 2*x1\n"), std::string::npos) << p.out;
}

TEST_F(CliTest, JsonSchema) {
    auto r = run({"--json", "verify", fixture("perturbed_contact.sj")});
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "verify");
    EXPECT_EQ(j["status"], "fail");
    ASSERT_EQ(j["checks"].size(), 6u);
    EXPECT_EQ(j["checks"][2]["name"], "compatibility");
    EXPECT_EQ(j["checks"][2]["status"], "fail");
    EXPECT_EQ(j["checks"][2]["residual"], "2*p_x1*p_xs1*p_tau");
    EXPECT_EQ(j["checks"][0]["residual"], "0");

    auto b = run({"--json", "bracket", fixture("contact.sj"), "--f", "f1", "--g", "one"});
    auto jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(jb["result"], "x1");
    EXPECT_EQ(jb["status"], "pass");

    auto h = run({"hvf", fixture("contact.sj"), "--f", "one", "--json"});
    auto jh = nlohmann::json::parse(h.out);
    EXPECT_EQ(jh["result"]["parity"], "odd");
    EXPECT_EQ(jh["result"]["components"]["tau"], "- 1");
    EXPECT_EQ(jh["result"]["components"]["x1"], "0");
}

TEST_F(CliTest, PropsOutputIsDeterministic) {
    std::vector<std::string> base{"props", fixture("perturbed_contact.sj"), "--seed", "5", "--samples", "12"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    auto a = run(one), b = run(four), c = run(one);
    EXPECT_EQ(a.code, 1);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_NE(a.out, run({"props", fixture("perturbed_contact.sj"), "--seed", "6", "--samples", "12"}).out);
}

TEST_F(CliTest, HumanReport) {
    auto r = run({"gauge", fixture("contact.sj"), "--s", "s_open"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("q_closed"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL  residual: xs1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("Maurer-Cartan but not Q-closed"), std::string::npos);
    EXPECT_EQ(r.out.substr(r.out.size() - 13), "status: FAIL\n");
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({"verify", fixture("contact.sj")}).code, 0);
    EXPECT_EQ(run({"verify", fixture("perturbed_contact.sj")}).code, 1);
    EXPECT_EQ(run({"example", "lie-schouten", fixture("jacobi_violating.sc")}).code, 1);

    auto malformed = run({"verify", fixture("malformed.sj")});
    EXPECT_EQ(malformed.code, 2);
    EXPECT_NE(malformed.err.find("6:32: expected ')'"), std::string::npos) << malformed.err;
    EXPECT_EQ(run({"verify", fixture("q_even.sj")}).code, 2);
    EXPECT_EQ(run({"verify", path("absent.sj")}).code, 2);
    EXPECT_EQ(run({"bracket", fixture("no_structure.sj"), "--f", "f", "--g", "g"}).code, 2);
    EXPECT_EQ(run({"bracket", fixture("contact.sj"), "--f", "nope", "--g", "one"}).code, 2);
    EXPECT_EQ(run({"hvf", fixture("contact.sj"), "--f", "s_bad"}).code, 0);
    EXPECT_EQ(run({"gauge", fixture("contact.sj"), "--s", "f1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"verify"}).code, 2);
    EXPECT_EQ(run({"example", "odd-contact", "--n", "0"}).code, 2);
    EXPECT_EQ(run({"poisson", fixture("contact.sj"), "--F", "p_x1 +", "--G", "x1"}).code, 2);
}

TEST_F(CliTest, Help) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
    EXPECT_EQ(run({"props", "--help"}).code, 0);
}

}  // namespace
