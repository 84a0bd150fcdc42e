#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hsconv/catalog.hpp"
#include "hsconv/config.hpp"
#include "hsconv/expression.hpp"
#include "hsconv/report.hpp"

using namespace hsconv;

namespace {

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

const char* kSquare = R"(
scenarios:
  - id: hh-square
    function: square
    chain: hh
)";

}  // namespace

TEST(Expression, Arithmetic) {
    EXPECT_DOUBLE_EQ(Expression::parse("x^2 + 1")(3.0), 10.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(0.0), 512.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-x^2")(3.0), -9.0);
    EXPECT_DOUBLE_EQ(Expression::parse("(1 - t) / 2")(0.5), 0.25);
    EXPECT_DOUBLE_EQ(Expression::parse("abs(x - 1) * sqrt(4)")(0.0), 2.0);
    EXPECT_DOUBLE_EQ(Expression::parse("exp(0)")(5.0), 1.0);
    EXPECT_DOUBLE_EQ(Expression::parse("x^alpha")(4.0, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(Expression::parse("1.5e1")(0.0), 15.0);
}

TEST(Expression, ErrorsCarryColumn) {
    try {
        Expression::parse("x + * 2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5);
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);
    }
    EXPECT_THROW(Expression::parse("(x"), ParseError);
    EXPECT_THROW(Expression::parse("y"), ParseError);
    EXPECT_THROW(Expression::parse("sin(x)"), ParseError);
    EXPECT_THROW(Expression::parse(""), ParseError);
}

TEST(Catalog, CallsAndNames) {
    const auto call = parse_catalog_call("power(1.5)");
    ASSERT_TRUE(call);
    EXPECT_EQ(call->name, "power");
    ASSERT_EQ(call->args.size(), 1u);
    EXPECT_DOUBLE_EQ(call->args[0], 1.5);
    EXPECT_FALSE(parse_catalog_call("x+1"));

    EXPECT_DOUBLE_EQ(resolve_function("square", Alpha(1.0), SParam(1.0))(0.5), 0.25);
    EXPECT_DOUBLE_EQ(resolve_function("power(3)", Alpha(1.0), SParam(1.0))(2.0), 8.0);
    EXPECT_DOUBLE_EQ(resolve_function("x^2 - 1", Alpha(1.0), SParam(1.0))(2.0), 3.0);
    EXPECT_DOUBLE_EQ(resolve_phi("affine(2, 1)")(1.0), 3.0);
    EXPECT_DOUBLE_EQ(resolve_h("power(2)")(0.5), 0.25);
    EXPECT_DOUBLE_EQ(resolve_density("triangular_up", {0.0, 1.0}, Alpha(1.0))(0.5), 1.0);
    EXPECT_THROW(resolve_function("power(1, 2, 3)", Alpha(1.0), SParam(1.0)), Error);
}

TEST(Config, MinimalScenario) {
    const auto cs = parse_config_text(kSquare);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].id, "hh-square");
    EXPECT_EQ(cs[0].chain, "hh");
    EXPECT_EQ(cs[0].alpha, 1.0);
    EXPECT_EQ(cs[0].backend, "gamma_power_rule");
}

TEST(Config, BadAlphaNamesLine) {
    const char* text = "scenarios:\n  - id: bad\n    alpha: 1.5\n";
    try {
        parse_config_text(text, "bad.yaml");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("bad.yaml:3:"), std::string::npos) << msg;
        EXPECT_NE(msg.find("alpha must lie in (0,1]"), std::string::npos) << msg;
    }
}

TEST(Config, UnknownKeysAndChains) {
    EXPECT_THROW(parse_config_text("scenarios:\n  - id: a\n    colour: red\n"), ConfigError);
    EXPECT_THROW(parse_config_text("scenarios:\n  - id: a\n    chain: nope\n"), ConfigError);
    EXPECT_THROW(parse_config_text("scenarios:\n  - id: a\n    s: -1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("scenarios: [\n"), ConfigError);
}

TEST(Config, SweepExpandsInOrder) {
    const auto cs = parse_config_text(R"(
defaults:
  backend: fractal_measure
scenarios:
  - id: sw
    sweep: {alpha: [0.3, 0.5, 1], s: [0, 0.5, 1]}
)");
    ASSERT_EQ(cs.size(), 9u);
    EXPECT_EQ(cs[0].id, "sw[alpha=0.3,s=0]");
    EXPECT_EQ(cs[1].id, "sw[alpha=0.3,s=0.5]");
    EXPECT_EQ(cs[8].id, "sw[alpha=1,s=1]");
    for (const auto& c : cs) EXPECT_EQ(c.backend, "fractal_measure");
}

TEST(Config, DefaultIdsAndParams) {
    const auto cs = parse_config_text(R"(
scenarios:
  - chain: refined
    params: {lambda: [0.25, 0.5]}
  - chain: hh
)");
    EXPECT_EQ(cs[0].id, "scenario-1");
    EXPECT_EQ(cs[1].id, "scenario-2");
    EXPECT_EQ(param_list(cs[0], "lambda", {}), (std::vector<double>{0.25, 0.5}));
    EXPECT_EQ(param_real(cs[1], "lambda", 0.7), 0.7);
}

TEST(Run, SquarePasses) {
    const auto doc = run(parse_config_text(kSquare), Command::Chain);
    EXPECT_EQ(doc.summary.pass, 2u);
    EXPECT_EQ(doc.summary.fail, 0u);
    EXPECT_EQ(exit_code(doc.summary), 0);
    EXPECT_EQ(doc.command, "chain");
    EXPECT_EQ(doc.tool_version, std::string(kToolVersion));
}

TEST(Run, ConcaveFails) {
    const auto doc = run(parse_config_text("scenarios:\n  - id: c\n    function: neg_square\n"),
                         Command::Chain);
    EXPECT_GE(doc.summary.fail, 1u);
    EXPECT_EQ(exit_code(doc.summary), 1);
}

TEST(Run, ErrorsBecomeRecordsAndOrderIsKept) {
    const auto doc = run(parse_config_text(R"(
scenarios:
  - id: first
  - id: broken
    chain: k9-point
    h: square
  - id: last
)"),
                         Command::Chain);
    ASSERT_EQ(doc.records.size(), 3u);
    EXPECT_EQ(doc.records[0].scenario_id, "first");
    EXPECT_FALSE(doc.records[1].error.empty());
    EXPECT_EQ(doc.records[2].scenario_id, "last");
    EXPECT_EQ(doc.summary.errors, 1u);
    EXPECT_EQ(exit_code(doc.summary), 1);
}

TEST(Run, OverridesRevalidate) {
    auto cs = parse_config_text(kSquare);
    apply_overrides(cs, {std::string("fractal_measure"), std::nullopt, 5});
    EXPECT_EQ(cs[0].backend, "fractal_measure");
    EXPECT_EQ(cs[0].seed, 5u);
    EXPECT_THROW(apply_overrides(cs, {std::string("nope"), std::nullopt, std::nullopt}), ConfigError);
}

TEST(Run, CertifyAndQuadcheck) {
    const auto certify = run(parse_config_text(kSquare), Command::Certify);
    ASSERT_EQ(certify.records.size(), 1u);
    EXPECT_EQ(certify.summary.pass, 1u);
    EXPECT_FALSE(certify.records[0].tags.empty());

    const auto quad = run(parse_config_text("scenarios:\n  - id: q\n    alpha: 0.5\n"),
                          Command::Quadcheck);
    EXPECT_EQ(quad.summary.fail, 0u);
    EXPECT_GE(quad.summary.pass, 4u);
}

TEST(Emit, JsonRoundTrip) {
    const auto doc = run(parse_config_text(R"(
scenarios:
  - id: a
  - id: b
    function: neg_square
    chain: refined
  - id: broken
    chain: k9-point
    h: square
)"),
                         Command::Chain);
    const std::string json = to_json(doc);
    const auto back = document_from_json(json);
    // The error record carries NaN values, so compare it through the text.
    ASSERT_EQ(back.records.size(), 3u);
    EXPECT_EQ(back.records[0], doc.records[0]);
    EXPECT_EQ(back.records[1], doc.records[1]);
    EXPECT_EQ(back.summary, doc.summary);
    EXPECT_EQ(to_json(back), json);
    EXPECT_THROW(document_from_json("{"), Error);
}

TEST(Emit, CsvRowCounts) {
    const auto one = run(parse_config_text(kSquare), Command::Chain);
    EXPECT_EQ(count_lines(to_csv(one)), 3u);
    const auto sweep = run(parse_config_text(R"(
scenarios:
  - id: sw
    sweep: {alpha: [0.3, 0.5, 1], s: [0, 0.5, 1]}
)"),
                           Command::Chain);
    EXPECT_EQ(count_lines(to_csv(sweep)), 19u);
    EXPECT_EQ(count_lines(to_csv(ReportDocument{})), 1u);
}

TEST(Emit, CsvQuotesFields) {
    const auto doc = run(parse_config_text("scenarios:\n  - id: \"a,b\"\n"), Command::Chain);
    EXPECT_NE(to_csv(doc).find("\"a,b\""), std::string::npos);
}

TEST(Emit, DeterministicAcrossRuns) {
    const char* text = R"(
scenarios:
  - id: s
    chain: hh
    search: {strategy: random, samples: 20, functions: [square, neg_square], alpha: [0.5, 1]}
)";
    const auto a = run(parse_config_text(text), Command::Search);
    const auto b = run(parse_config_text(text), Command::Search);
    EXPECT_EQ(to_json(a), to_json(b));
    EXPECT_EQ(to_csv(a), to_csv(b));
    EXPECT_EQ(a.summary.fail, 1u);
}

TEST(Emit, FileOutput) {
    const auto doc = run(parse_config_text(kSquare), Command::Chain);
    const std::string path = ::testing::TempDir() + "hsconv_emit.csv";
    emit(doc, EmitFormat::Csv, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), to_csv(doc));
    EXPECT_THROW(emit(doc, EmitFormat::Json, "/nonexistent-dir/x.json"), Error);
    EXPECT_EQ(emit_format_from_string("csv"), EmitFormat::Csv);
    EXPECT_THROW(emit_format_from_string("xml"), Error);
}
