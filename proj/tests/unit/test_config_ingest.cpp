#include <string>

#include <gtest/gtest.h>

#include "cycleforge/config.hpp"
#include "cycleforge/ingest.hpp"
#include "support/expect_error.hpp"

using namespace cycleforge;

namespace {

const char* kMinimal = R"({
  "indicators": [
    {"id": "x1", "pillar": "economic"},
    {"id": "s1", "pillar": "social"},
    {"id": "e1", "pillar": "environmental", "orientation": -1, "scale_exponent": -2}
  ],
  "sampling": {"start": 2010, "end": 2030, "count": 11}
})";

std::string error_message(const std::string& json) {
  try {
    parse_config(json);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    return e.what();
  }
  ADD_FAILURE() << "expected SchemaError";
  return {};
}

std::string with(const std::string& extra) {
  std::string s = kMinimal;
  s.insert(s.rfind('}'), "," + extra);
  return s;
}

}  // namespace

TEST(LoadConfig, MinimalGetsDefaults) {
  const RunConfig cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.base_year, 2010);
  EXPECT_EQ(cfg.period, 10.0);
  EXPECT_EQ(cfg.interpolant, InterpolantKind::LagrangeBarycentric);
  EXPECT_EQ(cfg.max_lagrange_nodes, 13u);
  EXPECT_EQ(cfg.logistic_source, LogisticSource::Fit);
  EXPECT_EQ(cfg.warp_mode, WarpMode::AutoWindow);
  EXPECT_EQ(cfg.origin(), 2010.0);
  EXPECT_EQ(cfg.analysis.fraction, 0.9);
  ASSERT_EQ(cfg.indicators.size(), 3u);
  EXPECT_EQ(cfg.indicators[2].orientation, -1);
  EXPECT_EQ(cfg.indicators[2].scale_exponent, -2);
  EXPECT_EQ(cfg.sampling.count, 11u);
}

TEST(LoadConfig, PeriodZero) {
  EXPECT_NE(error_message(with(R"("period": 0)")).find("'period'"), std::string::npos);
}

TEST(LoadConfig, UnknownInterpolantListsAllowed) {
  const std::string msg = error_message(with(R"("interpolant": "spline")"));
  EXPECT_NE(msg.find("interpolant"), std::string::npos);
  EXPECT_NE(msg.find("lagrange"), std::string::npos);
  EXPECT_NE(msg.find("piecewise_linear"), std::string::npos);
}

TEST(LoadConfig, UnknownKeysRejectedWithPath) {
  EXPECT_NE(error_message(with(R"("perod": 10)")).find("'perod'"), std::string::npos);
  EXPECT_NE(error_message(with(R"("analysis": {"flat_epsilon": 1})"))
                .find("'analysis.flat_epsilon'"),
            std::string::npos);
  const std::string bad_ind = R"({"indicators": [{"id": "a", "pillar": "economic", "weight": 2}],
    "sampling": {"start": 0, "end": 1, "count": 2}})";
  EXPECT_NE(error_message(bad_ind).find("'indicators[0].weight'"), std::string::npos);
}

TEST(LoadConfig, FieldValidation) {
  error_message(R"({"sampling": {"start": 0, "end": 1, "count": 2}})");
  error_message(with(R"("logistic": {"source": "explicit", "capacity": 10, "rate": 1})"));
  error_message(with(R"("logistic": {"source": "explicit", "capacity": 10, "rate": 1, "y_init": 10})"));
  error_message(with(R"("warp": {"mode": "affine", "scale": 0})"));
  error_message(with(R"("warp": {"mode": "auto_window", "window": [5, 1]})"));
  error_message(with(R"("analysis": {"fraction": 1.0})"));
  error_message(R"({"indicators": [{"id": "a", "pillar": "planet"}],
    "sampling": {"start": 0, "end": 1, "count": 2}})");
  error_message(R"({"indicators": [{"id": "a", "pillar": "economic"}],
    "sampling": {"start": 2, "end": 1, "count": 2}})");
  error_message("{not json");
}

TEST(LoadConfig, ExplicitLogisticAndAffineWarp) {
  const RunConfig cfg = parse_config(with(
      R"("logistic": {"source": "explicit", "capacity": 100, "rate": 0.5, "y_init": 10},
         "warp": {"mode": "affine", "scale": 2, "offset": -1}, "calendar_origin": 2005)"));
  EXPECT_EQ(cfg.logistic_source, LogisticSource::Explicit);
  EXPECT_EQ(cfg.capacity, 100.0);
  EXPECT_EQ(cfg.warp_mode, WarpMode::Affine);
  EXPECT_EQ(cfg.warp_scale, 2.0);
  EXPECT_EQ(cfg.origin(), 2005.0);
}

TEST(LoadConfig, MissingFileIsIoError) {
  EXPECT_CF_ERROR(load_config("/nonexistent/cfg.json"), ErrorCode::IoError);
}

TEST(IngestCsv, SingleDatum) {
  const std::vector<IndicatorDef> defs{{"x1", Pillar::Economic, 1, 0, ""}};
  const IngestResult r =
      parse_indicator_csv("year,indicator_id,value,weight\n2010,x1,0.42,1.0\n", defs, 2010);
  EXPECT_TRUE(r.warnings.empty());
  ASSERT_EQ(r.panel.values.size(), 1u);
  EXPECT_EQ(r.panel.values.at({"x1", 2010}), 0.42);
  EXPECT_EQ(r.panel.weights.at({"x1", 2010}), 1.0);
  EXPECT_EQ(r.panel.years, std::vector<int>{2010});
}

TEST(IngestCsv, MissingWeightColumnDefaults) {
  const IngestResult r = parse_indicator_csv(
      "year,indicator_id,value\r\n2010,x1,0.42\r\n2011,x1,0.5\r\n", {}, 2010);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.panel.weights.at({"x1", 2011}), 1.0);
}

TEST(IngestCsv, DuplicateRowNamesLine) {
  try {
    parse_indicator_csv("year,indicator_id,value,weight\n2010,x1,1,1\n2011,x1,1,1\n2010,x1,2,1\n",
                        {}, 2010);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(IngestCsv, ParseErrorsCarryColumn) {
  try {
    parse_indicator_csv("year,indicator_id,value,weight\n2010,x1,abc,1\n", {}, 2010);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos) << e.what();
  }
  EXPECT_CF_ERROR(parse_indicator_csv("year,id,value\n", {}, 2010), ErrorCode::ParseError);
  EXPECT_CF_ERROR(parse_indicator_csv("", {}, 2010), ErrorCode::ParseError);
  EXPECT_CF_ERROR(parse_indicator_csv("year,indicator_id,value,weight\n2010,x1,1\n", {}, 2010),
                  ErrorCode::ParseError);
  EXPECT_CF_ERROR(parse_indicator_csv("year,indicator_id,value,weight\n20x0,x1,1,1\n", {}, 2010),
                  ErrorCode::ParseError);
}

TEST(IngestCsv, ValidationFailureListsViolations) {
  const RunConfig cfg = load_config(CYCLEFORGE_DATA_DIR "/example_config.json");
  EXPECT_NO_THROW(ingest_csv(*cfg.data, cfg.indicators, cfg.base_year));

  std::vector<IndicatorDef> defs = cfg.indicators;
  defs.push_back({"missing", Pillar::Social, 1, 0, ""});
  try {
    ingest_csv(*cfg.data, defs, cfg.base_year);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
    EXPECT_NE(std::string(e.what()).find("MissingValue id=missing"), std::string::npos);
  }
  EXPECT_CF_ERROR(ingest_csv("/nonexistent.csv", defs, 2010), ErrorCode::IoError);
}
