#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tgm/campaign.hpp"

using namespace tgm;

namespace {

CampaignConfig small_main() {
  CampaignConfig c;
  c.inequality_id = InequalityId::MainTheorem;
  c.trials = 6;
  c.dims = {2, 3};
  c.m_values = {1, 2};
  c.t_grid = {0.5};
  c.r_grid = {1.0, 2.0};
  c.norm_specs = {"trace", "operator", "kyfan:all"};
  c.root_seed = 77;
  return c;
}

std::vector<InequalityReport> collect(const CampaignConfig& c, CampaignSummary* summary = nullptr) {
  std::vector<InequalityReport> out;
  const CampaignSummary s = run_campaign(c, [&](const InequalityReport& r) { out.push_back(r); });
  if (summary) *summary = s;
  return out;
}

std::string serialize(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  ReportWriter writer(out, OutputFormat::Json);
  for (const auto& r : reports) writer.write(r);
  return out.str();
}

std::string field_of(const CampaignConfig& c) {
  try {
    c.validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tgm_test_campaign_" + name);
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  CampaignConfig c = small_main();
  c.trials = 0;
  CHECK(field_of(c) == "trials");

  c = small_main();
  c.t_grid.clear();
  CHECK(field_of(c) == "t-grid");

  c = small_main();
  c.rel_tol = 0.0;
  CHECK(field_of(c) == "relTol");

  c = small_main();
  c.t_grid = {1.5};
  CHECK(field_of(c) == "t-grid");

  c = small_main();
  c.norm_specs = {"kyfan:3"};
  CHECK(field_of(c) == "norm-specs");

  c = small_main();
  c.inequality_id = InequalityId::Audenaert;
  CHECK(field_of(c) == "ensemble");
  c.ensemble.kind = EnsembleKind::CommutingPair;
  CHECK(field_of(c) == "");

  c = small_main();
  c.ensemble.kind = EnsembleKind::HermitianIndefinite;
  CHECK(field_of(c) == "ensemble");

  c = small_main();
  c.inequality_id = InequalityId::BourinUchiyama;
  c.functions = {"expm1"};
  c.direction = Convexity::Concave;
  CHECK(field_of(c) == "functions");

  CHECK_THROWS_AS(run_campaign(CampaignConfig{.trials = 0}), ConfigError);
}

TEST_CASE("config JSON: round trip, defaults and unknown keys") {
  CampaignConfig c = small_main();
  c.epsilon_scale = 1e-10;
  c.direction = Convexity::Convex;
  c.ensemble.kind = EnsembleKind::PsdRankDeficient;
  c.ensemble.rank = 1;
  const nlohmann::json j = config_to_json(c);
  CHECK(config_to_json(config_from_json(nlohmann::json::parse(j.dump()))) == j);

  const CampaignConfig defaults = config_from_json(nlohmann::json::object());
  CHECK(config_to_json(defaults) == config_to_json(CampaignConfig{}));

  const auto parsed = config_from_json(nlohmann::json::parse(R"({"inequality-id": "LemmaChain", "trials": 3,
      "t-grid": [0, 1], "ensemble": {"kind": "pd", "condition-target": 10}})"));
  CHECK(parsed.inequality_id == InequalityId::LemmaChain);
  CHECK(parsed.trials == 3);
  CHECK(parsed.t_grid == std::vector<double>{0.0, 1.0});
  CHECK(parsed.ensemble.condition_target == 10.0);

  auto field_error = [](const char* text) {
    try {
      config_from_json(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field_error(R"({"trails": 3})") == "trails");
  CHECK(field_error(R"({"trials": 0})") == "trials");
  CHECK(field_error(R"({"trials": "ten"})") == "trials");
  CHECK(field_error(R"({"ensemble": {"kind": "wishart"}})") == "ensemble");
  CHECK(field_error(R"({"ensemble": {"size": 3}})") == "ensemble.size");
  CHECK(field_error(R"({"output-format": "xml"})") == "output-format");
  CHECK(field_error(R"([1, 2])") == "<root>");
}

TEST_CASE("report count is trials times the relevant grid") {
  const CampaignConfig c = small_main();
  // dims 2, 3 give 2 + 2 and 2 + 3 norms; m x r = 4 points.
  CHECK(expected_report_count(c) == 6 * 4 * (4 + 5));
  CampaignSummary summary;
  const auto reports = collect(c, &summary);
  CHECK(reports.size() == expected_report_count(c));
  CHECK(summary.total == reports.size());

  CampaignConfig lemma = small_main();
  lemma.inequality_id = InequalityId::LemmaChain;
  lemma.t_grid = {0.0, 0.5, 1.0};
  lemma.r_grid = {0.5};
  lemma.s_grid = {1.0, 2.0};
  lemma.dims = {3};
  lemma.trials = 2;
  // The m axis does not apply to the lemma.
  CHECK(expected_report_count(lemma) == 2 * 3 * 2 * 5);
  CHECK(collect(lemma).size() == expected_report_count(lemma));
}

TEST_CASE("main theorem at t = 1/2 holds on a small campaign") {
  CampaignSummary summary;
  const auto reports = collect(small_main(), &summary);
  CHECK(summary.violated == 0);
  CHECK(summary.held == summary.total);
  for (const auto& r : reports) CHECK(r.params.t == 0.5);
}

TEST_CASE("summary agrees with the emitted stream") {
  CampaignConfig c = small_main();
  c.inequality_id = InequalityId::LemmaChain;
  c.t_grid = {0.25, 0.75};
  c.r_grid = {0.5, 2.0};
  c.s_grid = {1.0, 2.0};
  c.trials = 10;
  CampaignSummary summary;
  const auto reports = collect(c, &summary);

  std::size_t held = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    held += r.holds ? 1 : 0;
    min_margin = std::min(min_margin, r.min_margin());
    CHECK(summary.min_margin <= r.min_margin());
  }
  CHECK(summary.held == held);
  CHECK(summary.held + summary.violated == summary.total);
  CHECK(summary.min_margin == min_margin);
  REQUIRE(summary.min_margin_report);
  CHECK(summary.min_margin_report->min_margin() == min_margin);

  CampaignSummary refold;
  for (const auto& r : reports) refold.fold(r, c.tolerance());
  CHECK(refold.same_outcome(summary));
}

TEST_CASE("identical configs give identical streams, whatever the thread count") {
  CampaignConfig c = small_main();
  c.trials = 70;  // spans two batches
  c.dims = {3};
  c.m_values = {2};
  c.r_grid = {2.0};
  CampaignSummary one;
  const std::string first = serialize(collect(c, &one));

  CampaignSummary two;
  CHECK(serialize(collect(c, &two)) == first);
  CHECK(one.same_outcome(two));

  c.threads = 3;
  CampaignSummary threaded;
  CHECK(serialize(collect(c, &threaded)) == first);
  CHECK(one.same_outcome(threaded));

  c.root_seed += 1;
  CHECK(serialize(collect(c)) != first);
}

TEST_CASE("trial seeds are independent of the trial count") {
  CampaignConfig c = small_main();
  c.trials = 3;
  const auto short_run = collect(c);
  c.trials = 5;
  const auto long_run = collect(c);
  REQUIRE(long_run.size() > short_run.size());
  for (std::size_t i = 0; i < short_run.size(); ++i) CHECK(long_run[i] == short_run[i]);
}

TEST_CASE("PSD rank-deficient campaigns report their regularization") {
  CampaignConfig c = small_main();
  c.ensemble.kind = EnsembleKind::PsdRankDeficient;
  c.dims = {4};
  c.trials = 6;
  CampaignSummary summary;
  const auto reports = collect(c, &summary);
  CHECK(summary.violated == 0);
  for (const auto& r : reports) {
    REQUIRE(r.regularization_epsilon);
    CHECK(*r.regularization_epsilon > 0.0);
    for (const auto& term : r.terms) CHECK(std::isfinite(term.value));
  }
}

TEST_CASE("Bourin-Uchiyama and Audenaert campaigns") {
  CampaignConfig bu = small_main();
  bu.inequality_id = InequalityId::BourinUchiyama;
  bu.functions = {"power:2", "power:0.5", "ratio"};
  CampaignSummary summary;
  const auto reports = collect(bu, &summary);
  CHECK(reports.size() == expected_report_count(bu));
  CHECK(summary.violated == 0);
  CHECK(reports.front().params.function_id == "power:2");

  CampaignConfig aud = small_main();
  aud.inequality_id = InequalityId::Audenaert;
  aud.ensemble.kind = EnsembleKind::CommutingPair;
  const auto aud_reports = collect(aud, &summary);
  CHECK(aud_reports.size() == expected_report_count(aud));
  CHECK(summary.violated == 0);
}

TEST_CASE("run_campaign_to_file writes JSON lines and CSV") {
  CampaignConfig c = small_main();
  c.trials = 2;
  const auto expected = collect(c);

  c.output_path = temp_path("out.jsonl").string();
  run_campaign_to_file(c);
  std::ifstream json_in(c.output_path);
  std::size_t count = 0;
  for (std::string line; std::getline(json_in, line); ++count) {
    REQUIRE(count < expected.size());
    CHECK(report_from_json(nlohmann::json::parse(line)) == expected[count]);
  }
  CHECK(count == expected.size());

  c.output_path = temp_path("out.csv").string();
  c.output_format = OutputFormat::Csv;
  run_campaign_to_file(c);
  std::ifstream csv_in(c.output_path);
  std::string header;
  std::getline(csv_in, header);
  CHECK(header == kCsvHeader);
  std::size_t rows = 0;
  for (std::string line; std::getline(csv_in, line);) ++rows;
  CHECK(rows == expected.size());

  std::filesystem::remove(temp_path("out.jsonl"));
  std::filesystem::remove(temp_path("out.csv"));

  c.output_path = "/nonexistent-dir/out.csv";
  CHECK_THROWS_WITH_AS(run_campaign_to_file(c), doctest::Contains("/nonexistent-dir/out.csv"), Error);
}

TEST_CASE("summary JSON") {
  CampaignSummary summary;
  collect(small_main(), &summary);
  const nlohmann::json j = summary_to_json(summary);
  for (const char* key : {"total", "held", "violated", "numerical-ties", "min-margin", "min-margin-report", "wall-time"})
    CHECK(j.contains(key));
  CHECK(j["min-margin-report"]["params"].contains("seed"));
  CHECK(summary_to_json(CampaignSummary{})["min-margin"].is_null());
}
