#pragma once

// Randomized campaigns over the inequality checks, and a hill-descent
// counterexample search.
//
// A campaign evaluates `trials` random instances per (dim, m) cell and, for
// each, one report per point of the inequality's parameter grid. Axes that
// an inequality does not use are ignored:
//
//   LemmaChain              dims x t x r x s x norms
//   MainTheorem, ProofStep* dims x m x t x r x norms
//   BourinUchiyama          dims x m x functions x norms
//   Audenaert               dims x m x norms
//
// Trial k draws its instance from split_seed(root-seed, k) and reports are
// emitted in (trial, grid-point) order whatever the thread count.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgm/ensembles.hpp"
#include "tgm/inequalities.hpp"
#include "tgm/report_io.hpp"

namespace tgm {

struct CampaignConfig {
  InequalityId inequality_id = InequalityId::MainTheorem;
  std::size_t trials = 100;
  std::vector<std::size_t> dims{4};
  std::vector<std::size_t> m_values{2};
  std::vector<double> t_grid{0.5};
  std::vector<double> r_grid{1.0};
  std::vector<double> s_grid{1.0};
  /// Norm spec strings; "kyfan:all" expands to kyfan:1..n per dimension.
  std::vector<std::string> norm_specs{"schatten:1", "schatten:1.5", "schatten:2", "schatten:3", "schatten:inf",
                                      "kyfan:all"};
  /// Template; dim and seed are overwritten per instance. For
  /// psd-rank-deficient, rank 0 means "cycle through 1..dim-1 by trial".
  EnsembleSpec ensemble;
  std::uint64_t root_seed = 0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  bool printed_form = true;
  std::string output_path;
  OutputFormat output_format = OutputFormat::Json;
  /// BourinUchiyama only.
  std::vector<std::string> functions{"power:2"};
  /// BourinUchiyama only; unset picks each function's registered direction.
  std::optional<Convexity> direction;
  /// Regularization scale for singular inputs; used for psd-rank-deficient
  /// ensembles (default 1e-10 there) or whenever set explicitly.
  std::optional<double> epsilon_scale;
  std::size_t threads = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  Tolerance tolerance() const { return {rel_tol, abs_tol}; }
};

/// Reads the JSON config (CampaignConfig field names, hyphenated); missing
/// keys keep their defaults, unknown keys are rejected.
CampaignConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const CampaignConfig& config);
CampaignConfig read_config_file(const std::string& path);

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t held = 0;
  std::size_t violated = 0;
  /// Reports whose negative margin stays inside the tolerance band (counted
  /// in `held`).
  std::size_t numerical_ties = 0;
  double min_margin = 0.0;
  /// Report that attained min_margin (first in emission order on ties).
  std::optional<InequalityReport> min_margin_report;
  double wall_time_seconds = 0.0;

  /// Adds one report in emission order.
  void fold(const InequalityReport& report, const Tolerance& tol);
  /// Everything but wall time.
  bool same_outcome(const CampaignSummary& other) const;
};

nlohmann::json summary_to_json(const CampaignSummary& summary);

/// Number of reports a campaign emits, as the product of its relevant axes.
std::size_t expected_report_count(const CampaignConfig& config);

using ReportSink = std::function<void(const InequalityReport&)>;

/// Runs the campaign, feeding every report to `sink` in deterministic order.
CampaignSummary run_campaign(const CampaignConfig& config, const ReportSink& sink = {});

/// Runs the campaign and writes reports to config.output_path (if set).
CampaignSummary run_campaign_to_file(const CampaignConfig& config);

// --- counterexample search ----------------------------------------------

struct SearchTarget {
  InequalityId inequality_id = InequalityId::MainTheorem;
  std::size_t dim = 3;
  std::size_t m = 2;
  double t = 0.5;
  double r = 1.0;
  double s = 1.0;
  NormSpec norm = NormSpec::trace();
  bool printed_form = true;
  /// BourinUchiyama only.
  std::string function_id = "power:2";
  /// LemmaChain only: keep B equal to A throughout.
  bool force_equal = false;
};

struct SearchOptions {
  std::size_t steps = 10000;
  std::uint64_t seed = 0;
  double initial_step = 0.05;
  std::size_t stall_limit = 50;
  EnsembleSpec ensemble;
  Tolerance tolerance;
};

/// The best instance found. Matrices are stored exactly as evaluated, so
/// evaluate_instance on them reproduces `report` bit for bit.
struct SearchReport {
  SearchTarget target;
  std::size_t steps = 0;
  std::size_t restarts = 0;
  std::size_t accepted = 0;
  bool violation_found = false;
  double min_margin = 0.0;
  /// min_margin / scale, the quantity the descent minimizes.
  double relative_margin = 0.0;
  InequalityReport report;
  std::vector<Matrix> a_list;
  std::vector<Matrix> b_list;
};

/// Random-restart hill descent on the relative margin: perturb every matrix
/// by a Hermitian step of size `step` * ||X||_F, accept improvements, halve
/// the step otherwise, restart after `stall_limit` consecutive stalls.
SearchReport search_counterexample(const SearchTarget& target, const SearchOptions& options);

/// Evaluates one instance from raw matrices (strict PD for mean-based
/// targets, PSD for BourinUchiyama). b may be empty for BourinUchiyama.
InequalityReport evaluate_instance(const SearchTarget& target, const std::vector<Matrix>& a,
                                   const std::vector<Matrix>& b, const Tolerance& tol = {});

nlohmann::json search_report_to_json(const SearchReport& report);
SearchReport search_report_from_json(const nlohmann::json& j);

}  // namespace tgm
