// tgm: campaign runner, counterexample search and single-instance evaluator
// for norm inequalities of matrix geometric means.
//
// Exit codes: 0 = ran, no violations; 2 = ran, violations found; 1 = error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgm/campaign.hpp"
#include "tgm/matrix_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolations = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<std::size_t> dims;
  std::string out;
  std::optional<std::string> format;
  bool printed_form = true;
  CLI::Option* printed_form_opt = nullptr;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "Campaign config JSON");
  app->add_option("--seed", f.seed, "Root seed (overrides root-seed)");
  app->add_option("--trials", f.trials, "Number of trials (overrides trials)");
  app->add_option("--dim", f.dims, "Matrix dimension; repeat for several (overrides dims)");
  app->add_option("--out", f.out, "Output path (overrides output-path)");
  app->add_option("--format", f.format, "json or csv (overrides output-format)")->check(CLI::IsMember({"json", "csv"}));
  f.printed_form_opt = app->add_flag("--printed-form,!--no-printed-form", f.printed_form,
                                     "Evaluate the main theorem exactly as printed (default) or its t-dependent form");
  app->add_option("--tolerance-rel", f.tol_rel, "Relative tolerance (overrides relTol)");
  app->add_option("--tolerance-abs", f.tol_abs, "Absolute tolerance (overrides absTol)");
  app->add_option("--threads", f.threads, "Worker threads");
}

tgm::CampaignConfig resolve_config(const CommonFlags& f) {
  tgm::CampaignConfig c = f.config_path.empty() ? tgm::CampaignConfig{} : tgm::read_config_file(f.config_path);
  if (f.seed) c.root_seed = *f.seed;
  if (f.trials) c.trials = *f.trials;
  if (!f.dims.empty()) c.dims = f.dims;
  if (!f.out.empty()) c.output_path = f.out;
  if (f.format) c.output_format = tgm::parse_output_format(*f.format);
  if (f.printed_form_opt->count() > 0) c.printed_form = f.printed_form;
  if (f.tol_rel) c.rel_tol = *f.tol_rel;
  if (f.tol_abs) c.abs_tol = *f.tol_abs;
  if (f.threads) c.threads = *f.threads;
  return c;
}

int run_campaign_cmd(const CommonFlags& flags) {
  const tgm::CampaignConfig config = resolve_config(flags);
  const tgm::CampaignSummary summary = tgm::run_campaign_to_file(config);
  std::cout << tgm::summary_to_json(summary).dump(2) << '\n';
  return summary.violated > 0 ? kExitViolations : kExitOk;
}

struct SearchFlags {
  std::optional<std::string> inequality;
  std::size_t steps = 10000;
  std::optional<double> t, r, s;
  std::optional<std::size_t> m;
  std::optional<std::string> norm;
  bool force_equal = false;
};

int run_search_cmd(const CommonFlags& flags, const SearchFlags& sf) {
  tgm::CampaignConfig config = resolve_config(flags);
  if (sf.inequality) config.inequality_id = tgm::parse_inequality_id(*sf.inequality);

  tgm::SearchTarget target;
  target.inequality_id = config.inequality_id;
  target.dim = config.dims.front();
  target.m = sf.m.value_or(config.m_values.front());
  target.t = sf.t.value_or(config.t_grid.front());
  target.r = sf.r.value_or(config.r_grid.front());
  target.s = sf.s.value_or(config.s_grid.front());
  const std::string norm = sf.norm.value_or(config.norm_specs.front());
  target.norm = tgm::NormSpec::parse(norm == "kyfan:all" ? "kyfan:1" : norm);
  target.printed_form = config.printed_form;
  target.function_id = config.functions.front();
  target.force_equal = sf.force_equal;

  tgm::SearchOptions options;
  options.steps = sf.steps;
  options.seed = config.root_seed;
  options.ensemble = config.ensemble;
  options.tolerance = config.tolerance();

  const tgm::SearchReport report = tgm::search_counterexample(target, options);
  const std::string text = tgm::search_report_to_json(report).dump(2);
  if (config.output_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(config.output_path);
    if (!out) throw tgm::Error("cannot open output path " + config.output_path);
    out << text << '\n';
    std::cout << "search: min margin " << tgm::format_double(report.min_margin) << " (relative "
              << tgm::format_double(report.relative_margin) << "), violation "
              << (report.violation_found ? "found" : "not found") << ", written to " << config.output_path << '\n';
  }
  return report.violation_found ? kExitViolations : kExitOk;
}

struct EvalFlags {
  std::string inequality;
  std::vector<std::string> a_files;
  std::vector<std::string> b_files;
  double t = 0.5;
  double r = 1.0;
  double s = 1.0;
  std::vector<std::string> norms{"trace"};
  std::string function_id = "power:2";
  std::string direction = "auto";
  std::optional<double> epsilon_scale;
  std::string instance_path;
};

int run_eval_cmd(const CommonFlags& flags, const EvalFlags& ef) {
  const tgm::Tolerance tol{flags.tol_rel.value_or(1e-9), flags.tol_abs.value_or(1e-12)};
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file.open(flags.out);
    if (!file) throw tgm::Error("cannot open output path " + flags.out);
    out = &file;
  }
  tgm::ReportWriter writer(*out, tgm::parse_output_format(flags.format.value_or("json")));

  if (!ef.instance_path.empty()) {
    std::ifstream in(ef.instance_path);
    if (!in) throw tgm::Error("cannot open " + ef.instance_path);
    const auto saved = tgm::search_report_from_json(nlohmann::json::parse(in));
    const auto report = tgm::evaluate_instance(saved.target, saved.a_list, saved.b_list, tol);
    writer.write(report);
    std::cerr << "reproduced min margin " << tgm::format_double(report.min_margin()) << ", recorded "
              << tgm::format_double(saved.min_margin) << ", difference "
              << tgm::format_double(std::abs(report.min_margin() - saved.min_margin)) << '\n';
    return report.holds ? kExitOk : kExitViolations;
  }

  const auto id = tgm::parse_inequality_id(ef.inequality);
  auto load = [](const std::vector<std::string>& paths, bool strict) {
    std::vector<tgm::PositiveMatrix> out;
    for (const auto& p : paths) {
      tgm::HermitianMatrix h(tgm::read_matrix_file(p));
      out.push_back(strict ? tgm::PositiveMatrix::strict(h) : tgm::PositiveMatrix::semidefinite(h));
    }
    return out;
  };
  const bool strict = !ef.epsilon_scale && id != tgm::InequalityId::Audenaert && id != tgm::InequalityId::BourinUchiyama;
  const auto a = load(ef.a_files, strict);
  const auto b = load(ef.b_files, strict);
  if (a.empty()) throw tgm::ShapeError("eval needs at least one --a matrix file");

  tgm::MeanOptions opts;
  opts.epsilon_scale = ef.epsilon_scale;
  const bool printed = flags.printed_form_opt->count() > 0 ? flags.printed_form : true;

  tgm::ReportParams params;
  params.m = a.size();
  params.n = a.front().dim();
  tgm::Chain chain;
  switch (id) {
    case tgm::InequalityId::LemmaChain:
      if (a.size() != 1 || b.size() != 1) throw tgm::ShapeError("LemmaChain takes exactly one --a and one --b");
      params.t = ef.t;
      params.r = ef.r;
      params.s = ef.s;
      chain = tgm::lemma_chain_terms(a[0], b[0], {ef.t, ef.r, ef.s}, opts);
      break;
    case tgm::InequalityId::MainTheorem:
      params.t = ef.t;
      params.r = ef.r;
      chain = tgm::main_theorem_terms(a, b, ef.t, ef.r, printed, opts);
      break;
    case tgm::InequalityId::ProofStep11:
    case tgm::InequalityId::ProofStep22:
      params.t = ef.t;
      params.r = ef.r;
      chain = tgm::sub_chain(tgm::proof_step_terms(a, b, ef.t, ef.r, printed, opts),
                             id == tgm::InequalityId::ProofStep11 ? 0 : 2, 3);
      break;
    case tgm::InequalityId::BourinUchiyama: {
      params.function_id = ef.function_id;
      const auto fn = tgm::lookup_function(ef.function_id);
      tgm::Convexity dir = tgm::default_direction(fn);
      if (ef.direction == "convex") dir = tgm::Convexity::Convex;
      if (ef.direction == "concave") dir = tgm::Convexity::Concave;
      chain = tgm::bourin_uchiyama_terms(a, ef.function_id, dir);
      break;
    }
    case tgm::InequalityId::Audenaert:
      chain = tgm::audenaert_terms(a, b);
      break;
  }
  bool all_hold = true;
  for (const auto& text : ef.norms) {
    const auto report = tgm::report_for(id, chain, params, tgm::NormSpec::parse(text), tol);
    all_hold = all_hold && report.holds;
    writer.write(report);
  }
  return all_hold ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of norm inequalities for matrix geometric means"};
  app.require_subcommand(1);

  CommonFlags campaign_flags;
  auto* campaign = app.add_subcommand("campaign", "Run a randomized campaign and emit reports");
  add_common(campaign, campaign_flags);

  CommonFlags search_flags;
  SearchFlags sf;
  auto* search = app.add_subcommand("search", "Hill-descent counterexample search");
  add_common(search, search_flags);
  search->add_option("--inequality", sf.inequality, "Inequality id (overrides inequality-id)");
  search->add_option("--steps", sf.steps, "Number of perturbation steps")->capture_default_str();
  search->add_option("--t", sf.t, "Mean parameter t");
  search->add_option("--r", sf.r, "Power r");
  search->add_option("--s", sf.s, "Lemma parameter s");
  search->add_option("--m", sf.m, "Number of summands");
  search->add_option("--norm", sf.norm, "Norm spec, e.g. schatten:2, kyfan:1, trace");
  search->add_flag("--force-equal", sf.force_equal, "LemmaChain: keep B equal to A");

  CommonFlags eval_flags;
  EvalFlags ef;
  auto* eval = app.add_subcommand("eval", "Evaluate one instance from matrix files");
  add_common(eval, eval_flags);
  eval->add_option("--inequality", ef.inequality, "Inequality id");
  eval->add_option("--a", ef.a_files, "A matrix file; repeat for A_1..A_m");
  eval->add_option("--b", ef.b_files, "B matrix file; repeat for B_1..B_m");
  eval->add_option("--t", ef.t, "Mean parameter t")->capture_default_str();
  eval->add_option("--r", ef.r, "Power r")->capture_default_str();
  eval->add_option("--s", ef.s, "Lemma parameter s")->capture_default_str();
  eval->add_option("--norm", ef.norms, "Norm spec; repeat for several")->capture_default_str();
  eval->add_option("--function", ef.function_id, "BourinUchiyama function id")->capture_default_str();
  eval->add_option("--direction", ef.direction, "convex, concave or auto")
      ->check(CLI::IsMember({"convex", "concave", "auto"}));
  eval->add_option("--epsilon-scale", ef.epsilon_scale, "Use the regularized mean for singular inputs");
  eval->add_option("--instance", ef.instance_path, "Re-evaluate the instance stored in a search report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*campaign) return run_campaign_cmd(campaign_flags);
    if (*search) return run_search_cmd(search_flags, sf);
    if (*eval) {
      if (ef.instance_path.empty() && ef.inequality.empty()) {
        throw tgm::Error("eval needs --inequality or --instance");
      }
      return run_eval_cmd(eval_flags, ef);
    }
  } catch (const std::exception& e) {
    std::cerr << "tgm: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
