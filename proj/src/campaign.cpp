#include "tgm/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

namespace tgm {

using nlohmann::json;

namespace {

constexpr double kDefaultPsdEpsilonScale = 1e-10;
constexpr std::size_t kTrialsPerBatch = 64;

struct Instance {
  std::vector<PositiveMatrix> a;
  std::vector<PositiveMatrix> b;
  std::uint64_t seed;
};

bool uses_m_axis(InequalityId id) { return id != InequalityId::LemmaChain; }

std::size_t rank_for(const EnsembleSpec& templ, std::size_t dim, std::size_t trial) {
  if (templ.rank != 0) return templ.rank;
  return dim >= 2 ? 1 + trial % (dim - 1) : 0;
}

PositiveMatrix draw_one(const EnsembleSpec& templ, std::size_t dim, std::uint64_t seed, std::size_t trial) {
  EnsembleSpec spec = templ;
  spec.dim = dim;
  spec.seed = seed;
  if (spec.kind == EnsembleKind::PsdRankDeficient) {
    spec.rank = rank_for(templ, dim, trial);
    return random_psd_rank_deficient(spec);
  }
  return random_pd(spec);
}

Instance draw_instance(const EnsembleSpec& templ, std::size_t dim, std::size_t m, std::uint64_t seed,
                       std::size_t trial) {
  Instance inst{{}, {}, seed};
  for (std::size_t i = 0; i < m; ++i) {
    if (templ.kind == EnsembleKind::CommutingPair) {
      EnsembleSpec spec = templ;
      spec.dim = dim;
      spec.seed = split_seed(seed, i);
      auto [a, b] = random_commuting_pair(spec);
      inst.a.push_back(std::move(a));
      inst.b.push_back(std::move(b));
    } else {
      inst.a.push_back(draw_one(templ, dim, split_seed(seed, 2 * i), trial));
      inst.b.push_back(draw_one(templ, dim, split_seed(seed, 2 * i + 1), trial));
    }
  }
  return inst;
}

std::vector<NormSpec> expand_norms(const std::vector<std::string>& specs, std::size_t n) {
  std::vector<NormSpec> out;
  for (const auto& text : specs) {
    if (text == "kyfan:all") {
      for (std::size_t k = 1; k <= n; ++k) out.push_back(NormSpec::ky_fan(k));
    } else {
      out.push_back(NormSpec::parse(text));
    }
  }
  return out;
}

MeanOptions mean_options(const CampaignConfig& c) {
  MeanOptions opt;
  if (c.epsilon_scale) {
    opt.epsilon_scale = c.epsilon_scale;
  } else if (c.ensemble.kind == EnsembleKind::PsdRankDeficient) {
    opt.epsilon_scale = kDefaultPsdEpsilonScale;
  }
  return opt;
}

void append(std::vector<InequalityReport>& out, std::vector<InequalityReport>&& more) {
  for (auto& r : more) out.push_back(std::move(r));
}

std::vector<InequalityReport> run_trial(const CampaignConfig& c, std::size_t trial) {
  const Tolerance tol = c.tolerance();
  const MeanOptions opts = mean_options(c);
  const std::uint64_t trial_seed = split_seed(c.root_seed, trial);
  const std::vector<std::size_t> lemma_m{1};
  const auto& m_axis = uses_m_axis(c.inequality_id) ? c.m_values : lemma_m;

  std::vector<InequalityReport> out;
  for (std::size_t di = 0; di < c.dims.size(); ++di) {
    const std::size_t n = c.dims[di];
    const std::vector<NormSpec> norms = expand_norms(c.norm_specs, n);
    for (std::size_t mi = 0; mi < m_axis.size(); ++mi) {
      const std::size_t m = m_axis[mi];
      const Instance inst = draw_instance(c.ensemble, n, m, split_seed(split_seed(trial_seed, di), mi), trial);
      ReportParams base;
      base.m = m;
      base.n = n;
      base.seed = inst.seed;

      switch (c.inequality_id) {
        case InequalityId::LemmaChain:
          for (double t : c.t_grid)
            for (double r : c.r_grid)
              for (double s : c.s_grid) {
                ReportParams p = base;
                p.t = t;
                p.r = r;
                p.s = s;
                append(out, reports_for(c.inequality_id, lemma_chain_terms(inst.a[0], inst.b[0], {t, r, s}, opts), p,
                                        norms, tol));
              }
          break;
        case InequalityId::MainTheorem:
        case InequalityId::ProofStep11:
        case InequalityId::ProofStep22:
          for (double t : c.t_grid)
            for (double r : c.r_grid) {
              ReportParams p = base;
              p.t = t;
              p.r = r;
              Chain chain;
              if (c.inequality_id == InequalityId::MainTheorem) {
                chain = main_theorem_terms(inst.a, inst.b, t, r, c.printed_form, opts);
              } else {
                const Chain full = proof_step_terms(inst.a, inst.b, t, r, c.printed_form, opts);
                chain = sub_chain(full, c.inequality_id == InequalityId::ProofStep11 ? 0 : 2, 3);
              }
              append(out, reports_for(c.inequality_id, chain, p, norms, tol));
            }
          break;
        case InequalityId::BourinUchiyama:
          for (const auto& fid : c.functions) {
            const Convexity dir = c.direction.value_or(default_direction(lookup_function(fid)));
            ReportParams p = base;
            p.function_id = fid;
            append(out, reports_for(c.inequality_id, bourin_uchiyama_terms(inst.a, fid, dir), p, norms, tol));
          }
          break;
        case InequalityId::Audenaert:
          append(out, reports_for(c.inequality_id, audenaert_terms(inst.a, inst.b), base, norms, tol));
          break;
      }
    }
  }
  return out;
}

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

}  // namespace

void CampaignConfig::validate() const {
  if (trials < 1) throw ConfigError("trials", "must be at least 1");
  if (dims.empty()) throw ConfigError("dims", "grid must be nonempty");
  if (m_values.empty()) throw ConfigError("m-values", "grid must be nonempty");
  if (t_grid.empty()) throw ConfigError("t-grid", "grid must be nonempty");
  if (r_grid.empty()) throw ConfigError("r-grid", "grid must be nonempty");
  if (s_grid.empty()) throw ConfigError("s-grid", "grid must be nonempty");
  if (norm_specs.empty()) throw ConfigError("norm-specs", "list must be nonempty");
  if (!(rel_tol > 0.0)) throw ConfigError("relTol", "must be positive");
  if (!(abs_tol > 0.0)) throw ConfigError("absTol", "must be positive");
  if (threads < 1) throw ConfigError("threads", "must be at least 1");
  for (auto n : dims)
    if (n < 1) throw ConfigError("dims", "dimensions must be at least 1");
  for (auto m : m_values)
    if (m < 1) throw ConfigError("m-values", "m must be at least 1");
  for (double t : t_grid)
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t-grid", "t must lie in [0, 1]");
  for (double r : r_grid)
    if (!(r > 0.0)) throw ConfigError("r-grid", "r must be positive");
  for (double s : s_grid)
    if (!(s > 0.0)) throw ConfigError("s-grid", "s must be positive");
  if (epsilon_scale && !(*epsilon_scale > 0.0)) throw ConfigError("epsilon-scale", "must be positive");

  const std::size_t min_dim = *std::min_element(dims.begin(), dims.end());
  for (const auto& text : norm_specs) {
    if (text == "kyfan:all") continue;
    try {
      const NormSpec spec = NormSpec::parse(text);
      if (spec.kind() == NormSpec::Kind::KyFan && spec.k() > min_dim) {
        throw ConfigError("norm-specs", "invalid Ky Fan index " + std::to_string(spec.k()) + " for dim " +
                                            std::to_string(min_dim));
      }
    } catch (const DomainError& e) {
      throw ConfigError("norm-specs", e.what());
    }
  }

  try {
    EnsembleSpec probe = ensemble;
    probe.dim = std::max(min_dim, ensemble.rank + 1);
    probe.validate();
  } catch (const DomainError& e) {
    throw ConfigError("ensemble", e.what());
  }
  if (ensemble.kind == EnsembleKind::HermitianIndefinite) {
    throw ConfigError("ensemble", "hermitian-indefinite inputs are not valid for any inequality");
  }
  if (ensemble.kind == EnsembleKind::PsdRankDeficient && ensemble.rank != 0 && ensemble.rank >= min_dim) {
    throw ConfigError("ensemble", "invalid rank " + std::to_string(ensemble.rank) + " for dim " + std::to_string(min_dim));
  }
  if (inequality_id == InequalityId::Audenaert && ensemble.kind != EnsembleKind::CommutingPair) {
    throw ConfigError("ensemble", "Audenaert requires kind commuting-pair");
  }
  if (inequality_id == InequalityId::BourinUchiyama) {
    if (functions.empty()) throw ConfigError("functions", "list must be nonempty");
    for (const auto& f : functions) {
      try {
        const auto fn = lookup_function(f);
        if (direction && ((*direction == Convexity::Convex && !fn.convex) ||
                          (*direction == Convexity::Concave && !fn.concave))) {
          throw ConfigError("functions", "'" + f + "' is not registered as " + to_string(*direction));
        }
      } catch (const DomainError& e) {
        throw ConfigError("functions", e.what());
      }
    }
  }
}

CampaignConfig config_from_json(const json& j) {
  static const std::set<std::string> known{
      "inequality-id", "trials",       "dims",       "m-values",      "t-grid",        "r-grid",
      "s-grid",        "norm-specs",   "ensemble",   "root-seed",     "relTol",        "absTol",
      "printed-form",  "output-path",  "output-format", "functions",  "direction",     "epsilon-scale",
      "threads"};
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown field");
  }

  CampaignConfig c;
  auto field = [&](const char* key, auto&& apply) {
    if (!j.contains(key)) return;
    try {
      apply(j[key]);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  };
  field("inequality-id", [&](const json& v) { c.inequality_id = parse_inequality_id(v.get<std::string>()); });
  field("trials", [&](const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError("trials", "must be an integer >= 1");
    c.trials = v.get<std::size_t>();
  });
  field("dims", [&](const json& v) { c.dims = v.get<std::vector<std::size_t>>(); });
  field("m-values", [&](const json& v) { c.m_values = v.get<std::vector<std::size_t>>(); });
  field("t-grid", [&](const json& v) { c.t_grid = v.get<std::vector<double>>(); });
  field("r-grid", [&](const json& v) { c.r_grid = v.get<std::vector<double>>(); });
  field("s-grid", [&](const json& v) { c.s_grid = v.get<std::vector<double>>(); });
  field("norm-specs", [&](const json& v) { c.norm_specs = v.get<std::vector<std::string>>(); });
  field("root-seed", [&](const json& v) { c.root_seed = v.get<std::uint64_t>(); });
  field("relTol", [&](const json& v) { c.rel_tol = v.get<double>(); });
  field("absTol", [&](const json& v) { c.abs_tol = v.get<double>(); });
  field("printed-form", [&](const json& v) { c.printed_form = v.get<bool>(); });
  field("output-path", [&](const json& v) { c.output_path = v.get<std::string>(); });
  field("output-format", [&](const json& v) { c.output_format = parse_output_format(v.get<std::string>()); });
  field("functions", [&](const json& v) { c.functions = v.get<std::vector<std::string>>(); });
  field("direction", [&](const json& v) {
    const auto d = v.get<std::string>();
    if (d == "convex") {
      c.direction = Convexity::Convex;
    } else if (d == "concave") {
      c.direction = Convexity::Concave;
    } else if (d != "auto") {
      throw ConfigError("direction", "expected convex, concave or auto");
    }
  });
  field("epsilon-scale", [&](const json& v) { c.epsilon_scale = v.get<double>(); });
  field("threads", [&](const json& v) { c.threads = v.get<std::size_t>(); });
  field("ensemble", [&](const json& v) {
    static const std::set<std::string> ensemble_keys{"dim",   "kind", "rank", "condition-target",
                                                     "field", "seed", "equal-diagonals"};
    for (const auto& [key, value] : v.items()) {
      if (!ensemble_keys.contains(key)) throw ConfigError("ensemble." + key, "unknown field");
    }
    if (v.contains("kind")) c.ensemble.kind = parse_ensemble_kind(v["kind"].get<std::string>());
    if (v.contains("field")) c.ensemble.field = parse_field(v["field"].get<std::string>());
    read_key(v, "rank", c.ensemble.rank);
    read_key(v, "condition-target", c.ensemble.condition_target);
    read_key(v, "equal-diagonals", c.ensemble.equal_diagonals);
  });
  return c;
}

json config_to_json(const CampaignConfig& c) {
  json ensemble{{"kind", to_string(c.ensemble.kind)},
                {"rank", c.ensemble.rank},
                {"condition-target", c.ensemble.condition_target},
                {"field", to_string(c.ensemble.field)},
                {"equal-diagonals", c.ensemble.equal_diagonals}};
  json j{{"inequality-id", to_string(c.inequality_id)},
         {"trials", c.trials},
         {"dims", c.dims},
         {"m-values", c.m_values},
         {"t-grid", c.t_grid},
         {"r-grid", c.r_grid},
         {"s-grid", c.s_grid},
         {"norm-specs", c.norm_specs},
         {"ensemble", ensemble},
         {"root-seed", c.root_seed},
         {"relTol", c.rel_tol},
         {"absTol", c.abs_tol},
         {"printed-form", c.printed_form},
         {"output-path", c.output_path},
         {"output-format", to_string(c.output_format)},
         {"functions", c.functions},
         {"direction", c.direction ? to_string(*c.direction) : "auto"},
         {"threads", c.threads}};
  if (c.epsilon_scale) j["epsilon-scale"] = *c.epsilon_scale;
  return j;
}

CampaignConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("--config", path + ": " + e.what());
  }
  return config_from_json(j);
}

void CampaignSummary::fold(const InequalityReport& report, const Tolerance& tol) {
  if (total == 0) min_margin = std::numeric_limits<double>::infinity();
  ++total;
  if (report.holds) {
    ++held;
    if (report.is_numerical_tie(tol)) ++numerical_ties;
  } else {
    ++violated;
  }
  if (!report.margins.empty() && report.min_margin() < min_margin) {
    min_margin = report.min_margin();
    min_margin_report = report;
  }
}

bool CampaignSummary::same_outcome(const CampaignSummary& o) const {
  return total == o.total && held == o.held && violated == o.violated && numerical_ties == o.numerical_ties &&
         (min_margin == o.min_margin || (std::isnan(min_margin) && std::isnan(o.min_margin))) &&
         min_margin_report == o.min_margin_report;
}

json summary_to_json(const CampaignSummary& s) {
  return json{{"total", s.total},
              {"held", s.held},
              {"violated", s.violated},
              {"numerical-ties", s.numerical_ties},
              {"min-margin", s.min_margin_report ? json(s.min_margin) : json(nullptr)},
              {"min-margin-report", s.min_margin_report ? report_to_json(*s.min_margin_report) : json(nullptr)},
              {"wall-time", s.wall_time_seconds}};
}

std::size_t expected_report_count(const CampaignConfig& c) {
  std::size_t per_dim_total = 0;
  for (auto n : c.dims) {
    const std::size_t norms = expand_norms(c.norm_specs, n).size();
    std::size_t points = 0;
    switch (c.inequality_id) {
      case InequalityId::LemmaChain: points = c.t_grid.size() * c.r_grid.size() * c.s_grid.size(); break;
      case InequalityId::MainTheorem:
      case InequalityId::ProofStep11:
      case InequalityId::ProofStep22: points = c.m_values.size() * c.t_grid.size() * c.r_grid.size(); break;
      case InequalityId::BourinUchiyama: points = c.m_values.size() * c.functions.size(); break;
      case InequalityId::Audenaert: points = c.m_values.size(); break;
    }
    per_dim_total += points * norms;
  }
  return c.trials * per_dim_total;
}

CampaignSummary run_campaign(const CampaignConfig& config, const ReportSink& sink) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Tolerance tol = config.tolerance();
  CampaignSummary summary;

  for (std::size_t first = 0; first < config.trials; first += kTrialsPerBatch) {
    const std::size_t count = std::min(kTrialsPerBatch, config.trials - first);
    std::vector<std::vector<InequalityReport>> results(count);
    const std::size_t workers = std::min(config.threads, count);
    if (workers <= 1) {
      for (std::size_t k = 0; k < count; ++k) results[k] = run_trial(config, first + k);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k < count; k = next++) results[k] = run_trial(config, first + k);
          } catch (...) {
            errors[w] = std::current_exception();
            next = count;
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (const auto& trial : results) {
      for (const auto& report : trial) {
        summary.fold(report, tol);
        if (sink) sink(report);
      }
    }
  }
  summary.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

CampaignSummary run_campaign_to_file(const CampaignConfig& config) {
  config.validate();
  if (config.output_path.empty()) return run_campaign(config);
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw Error("cannot open output path " + config.output_path);
  ReportWriter writer(out, config.output_format);
  CampaignSummary summary = run_campaign(config, [&](const InequalityReport& r) { writer.write(r); });
  out.flush();
  if (!out) throw Error("write failed for output path " + config.output_path);
  return summary;
}

}  // namespace tgm
