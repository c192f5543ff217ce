#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clonescope/classifier/model_io.hpp"
#include "clonescope/error.hpp"
#include "clonescope/pipeline/config.hpp"
#include "clonescope/pipeline/pipeline.hpp"
#include "support.hpp"

using namespace clonescope;
using namespace clonescope::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "clonescope_pipeline_test";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CLONESCOPE_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

PairScore score(double s_a, double s_b, int label) { return {{s_a, s_b}, label}; }

}  // namespace

TEST(Config, ParsesKeysAndComments) {
    std::istringstream in(
        "# run settings\n"
        "seed = 42\n"
        "delta=0.8\n"
        "mode = literal\n"
        "num_leaves = 16\n"
        "learning_rate = 0.05\n");
    const auto c = parse_config(in);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.delta, 0.8);
    EXPECT_EQ(c.mode, similarity::AggregationMode::Literal);
    EXPECT_EQ(c.hyper.num_leaves, 16);
    EXPECT_EQ(c.hyper.learning_rate, 0.05);
    EXPECT_EQ(c.tau, similarity::kDefaultMatchThreshold);
}

TEST(Config, ErrorsNameTheLine) {
    std::istringstream unknown("seed = 1\ncolour = red\n");
    try {
        parse_config(unknown);
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream bad_number("delta = high\n");
    EXPECT_THROW(parse_config(bad_number), SchemaError);
    RunConfig c;
    c.delta = 1.0;
    EXPECT_THROW(c.validate(), Error);
    EXPECT_THROW(parse_seed("12x"), Error);
    EXPECT_EQ(parse_seed("18446744073709551615"), 18446744073709551615ull);
}

TEST(Config, EnvironmentSeed) {
    RunConfig c;
    ::setenv("CLONESCOPE_SEED", "99", 1);
    apply_environment(c);
    EXPECT_EQ(c.seed, 99u);
    ::setenv("CLONESCOPE_SEED", "nope", 1);
    EXPECT_THROW(apply_environment(c), Error);
    ::unsetenv("CLONESCOPE_SEED");
}

TEST(FunctionRefTest, SplitsOnLastColon) {
    const auto a = FunctionRef::parse("dir/file.sol:Token.transfer");
    EXPECT_EQ(a.file, "dir/file.sol");
    EXPECT_EQ(a.function, "Token.transfer");
    const auto b = FunctionRef::parse("file.sol");
    EXPECT_EQ(b.function, "");
    EXPECT_EQ(FunctionRef::parse("C:\\x\\f.sol").function, "");
}

TEST(Sweep, CountsAndConventions) {
    const std::vector<PairScore> s{score(0.9, 0.2, 1), score(0.6, 0.6, 1), score(0.75, 0.1, 0), score(0.1, 0.1, 0)};
    const auto r = evaluate_at(s, 0.7);
    EXPECT_EQ(r.tp, 1u);
    EXPECT_EQ(r.fp, 1u);
    EXPECT_EQ(r.fn, 1u);
    EXPECT_EQ(r.tn, 1u);
    EXPECT_DOUBLE_EQ(r.precision, 0.5);
    EXPECT_DOUBLE_EQ(r.f1, 0.5);
    const auto none = evaluate_at(s, 0.95);
    EXPECT_EQ(none.precision, 1.0);
    EXPECT_EQ(none.recall, 0.0);
    EXPECT_EQ(none.f1, 0.0);
    const auto d = default_deltas();
    ASSERT_EQ(d.size(), 9u);
    EXPECT_EQ(d.front(), 0.5);
    EXPECT_EQ(d.back(), 0.9);
    EXPECT_THROW(sweep_delta(std::vector<PairScore>{}, d), DegenerateData);
}

TEST(SweepProperty, RecallNonincreasingInDelta) {
    Rng rng(12);
    std::vector<PairScore> s;
    for (int i = 0; i < 300; ++i) s.push_back(score(rng.uniform(), rng.uniform(), rng.bernoulli(0.4)));
    const auto rows = sweep_delta(s, default_deltas());
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].recall, rows[i - 1].recall);
}

TEST(Pipeline, EndToEndWritesReports) {
    const auto dir = scratch_dir();
    const auto& tpl = fixtures::small_templates();
    write(dir / "a.sol", tpl[0]);
    write(dir / "b.sol", corpus::rename_identifiers(tpl[0]));
    gbdt::save_model(fixtures::small_model(), dir / "model.json");
    RunConfig c;
    c.model_path = dir / "model.json";
    c.json_out = dir / "report.json";
    c.text_out = dir / "report.txt";
    const auto rep = run_end_to_end(c, FunctionRef::parse((dir / "a.sol").string()),
                                    FunctionRef::parse((dir / "b.sol").string()));
    EXPECT_EQ(rep.verdict, similarity::Verdict::Clone);
    EXPECT_EQ(rep.model_id, gbdt::model_id(fixtures::small_model()));
    EXPECT_TRUE(fs::exists(c.json_out));
    EXPECT_TRUE(fs::exists(c.text_out));
    RunConfig none;
    EXPECT_THROW(obtain_model(none), Error);
    EXPECT_THROW(load_function(FunctionRef::parse((dir / "missing.sol").string())), Error);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch_dir();
    const auto& tpl = fixtures::small_templates();
    write(dir / "a.sol", tpl[0]);
    write(dir / "b.sol", corpus::rename_identifiers(tpl[0]));
    write(dir / "c.sol", tpl[1]);
    write(dir / "broken.sol", "function f( {");
    gbdt::save_model(fixtures::small_model(), dir / "model.json");
    const std::string model = " --model " + (dir / "model.json").string();
    EXPECT_EQ(run_cli("compare " + (dir / "a.sol").string() + " " + (dir / "b.sol").string() + model), 1);
    EXPECT_EQ(run_cli("compare " + (dir / "a.sol").string() + " " + (dir / "c.sol").string() + model), 0);
    EXPECT_EQ(run_cli("compare " + (dir / "a.sol").string() + " " + (dir / "broken.sol").string() + model), 2);
    EXPECT_EQ(run_cli("compare --delta 1.5 " + (dir / "a.sol").string() + " " + (dir / "b.sol").string() + model), 2);
    EXPECT_EQ(run_cli("no-such-command"), 2);
    EXPECT_EQ(run_cli("parse " + (dir / "a.sol").string()), 0);
    EXPECT_EQ(run_cli("decompose " + (dir / "broken.sol").string()), 2);
}
