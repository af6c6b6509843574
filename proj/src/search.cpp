#include <cmath>
#include <limits>

#include "tgm/campaign.hpp"
#include "tgm/matrix_io.hpp"

namespace tgm {

using nlohmann::json;

namespace {

std::vector<PositiveMatrix> as_strict(const std::vector<Matrix>& ms) {
  std::vector<PositiveMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(PositiveMatrix::strict(HermitianMatrix(m)));
  return out;
}

std::vector<PositiveMatrix> as_psd(const std::vector<Matrix>& ms) {
  std::vector<PositiveMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(PositiveMatrix::semidefinite(HermitianMatrix(m)));
  return out;
}

double objective(const InequalityReport& r) {
  const double scale = r.scale();
  return scale > 0.0 ? r.min_margin() / scale : 0.0;
}

Matrix perturb(const Matrix& x, double step, Field field, std::uint64_t seed) {
  const HermitianMatrix h = random_hermitian(x.dim(), field, seed);
  const double hn = frobenius_norm(h.matrix());
  if (hn == 0.0) return x;
  return x + (step * frobenius_norm(x) / hn) * h.matrix();
}

json target_to_json(const SearchTarget& t) {
  return json{{"inequality-id", to_string(t.inequality_id)},
              {"dim", t.dim},
              {"m", t.m},
              {"t", t.t},
              {"r", t.r},
              {"s", t.s},
              {"norm-spec", t.norm.to_string()},
              {"printed-form", t.printed_form},
              {"function-id", t.function_id},
              {"force-equal", t.force_equal}};
}

SearchTarget target_from_json(const json& j) {
  SearchTarget t;
  t.inequality_id = parse_inequality_id(j.at("inequality-id").get<std::string>());
  t.dim = j.at("dim").get<std::size_t>();
  t.m = j.at("m").get<std::size_t>();
  t.t = j.at("t").get<double>();
  t.r = j.at("r").get<double>();
  t.s = j.at("s").get<double>();
  t.norm = NormSpec::parse(j.at("norm-spec").get<std::string>());
  t.printed_form = j.at("printed-form").get<bool>();
  t.function_id = j.at("function-id").get<std::string>();
  t.force_equal = j.at("force-equal").get<bool>();
  return t;
}

}  // namespace

InequalityReport evaluate_instance(const SearchTarget& target, const std::vector<Matrix>& a,
                                   const std::vector<Matrix>& b, const Tolerance& tol) {
  ReportParams params;
  params.m = a.size();
  params.n = a.empty() ? 0 : a.front().dim();
  switch (target.inequality_id) {
    case InequalityId::BourinUchiyama: {
      params.function_id = target.function_id;
      const auto fn = lookup_function(target.function_id);
      return report_for(target.inequality_id, bourin_uchiyama_terms(as_psd(a), target.function_id, default_direction(fn)),
                        params, target.norm, tol);
    }
    case InequalityId::LemmaChain: {
      if (a.size() != 1 || b.size() != 1) throw ShapeError("LemmaChain takes exactly one A and one B");
      params.t = target.t;
      params.r = target.r;
      params.s = target.s;
      return report_for(target.inequality_id,
                        lemma_chain_terms(as_strict(a).front(), as_strict(b).front(), {target.t, target.r, target.s}),
                        params, target.norm, tol);
    }
    case InequalityId::MainTheorem:
      params.t = target.t;
      params.r = target.r;
      return report_for(target.inequality_id,
                        main_theorem_terms(as_strict(a), as_strict(b), target.t, target.r, target.printed_form), params,
                        target.norm, tol);
    case InequalityId::ProofStep11:
    case InequalityId::ProofStep22: {
      params.t = target.t;
      params.r = target.r;
      const Chain full = proof_step_terms(as_strict(a), as_strict(b), target.t, target.r, target.printed_form);
      return report_for(target.inequality_id,
                        sub_chain(full, target.inequality_id == InequalityId::ProofStep11 ? 0 : 2, 3), params,
                        target.norm, tol);
    }
    case InequalityId::Audenaert:
      break;
  }
  throw DomainError("search does not support " + to_string(target.inequality_id) +
                    ": perturbations break the commuting hypothesis");
}

SearchReport search_counterexample(const SearchTarget& target, const SearchOptions& options) {
  if (target.inequality_id == InequalityId::Audenaert) {
    throw DomainError("search does not support Audenaert: perturbations break the commuting hypothesis");
  }
  if (target.dim < 1 || target.m < 1) throw DomainError("search needs dim >= 1 and m >= 1");
  if (!(options.initial_step > 0.0)) throw DomainError("initial step must be positive");
  if (options.stall_limit < 1) throw DomainError("stall limit must be at least 1");

  const bool lemma = target.inequality_id == InequalityId::LemmaChain;
  const bool bourin = target.inequality_id == InequalityId::BourinUchiyama;
  const std::size_t count = lemma ? 1 : target.m;
  const Field field = options.ensemble.field;
  Rng rng(split_seed(options.seed, std::numeric_limits<std::uint64_t>::max()));

  struct Candidate {
    std::vector<Matrix> a;
    std::vector<Matrix> b;
    InequalityReport report;
    double value;
  };

  auto evaluate = [&](std::vector<Matrix> a, std::vector<Matrix> b) -> std::optional<Candidate> {
    try {
      auto report = evaluate_instance(target, a, b, options.tolerance);
      const double value = objective(report);
      if (!std::isfinite(value)) return std::nullopt;
      return Candidate{std::move(a), std::move(b), std::move(report), value};
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::size_t restarts = 0;
  auto fresh = [&]() -> Candidate {
    for (;;) {
      const std::uint64_t base = split_seed(options.seed, restarts++);
      EnsembleSpec spec = options.ensemble;
      spec.kind = EnsembleKind::PD;
      spec.dim = target.dim;
      std::vector<Matrix> a;
      std::vector<Matrix> b;
      for (std::size_t i = 0; i < count; ++i) {
        spec.seed = split_seed(base, 2 * i);
        a.push_back(random_pd(spec).matrix());
        if (bourin) continue;
        spec.seed = split_seed(base, 2 * i + 1);
        b.push_back(target.force_equal ? a.back() : random_pd(spec).matrix());
      }
      if (auto c = evaluate(std::move(a), std::move(b))) return std::move(*c);
    }
  };

  Candidate current = fresh();
  Candidate best = current;
  double step = options.initial_step;
  std::size_t stalls = 0;
  std::size_t accepted = 0;

  for (std::size_t it = 0; it < options.steps; ++it) {
    std::vector<Matrix> a;
    std::vector<Matrix> b;
    for (const auto& x : current.a) a.push_back(perturb(x, step, field, rng.next_u64()));
    for (const auto& x : current.b) b.push_back(perturb(x, step, field, rng.next_u64()));
    if (target.force_equal) b = a;

    auto cand = evaluate(std::move(a), std::move(b));
    if (cand && cand->value < current.value) {
      current = std::move(*cand);
      stalls = 0;
      ++accepted;
      if (current.value < best.value) best = current;
      continue;
    }
    step *= 0.5;
    if (++stalls >= options.stall_limit) {
      current = fresh();
      if (current.value < best.value) best = current;
      step = options.initial_step;
      stalls = 0;
    }
  }

  SearchReport out;
  out.target = target;
  out.steps = options.steps;
  out.restarts = restarts - 1;
  out.accepted = accepted;
  out.violation_found = !best.report.holds;
  out.min_margin = best.report.min_margin();
  out.relative_margin = best.value;
  out.report = std::move(best.report);
  out.a_list = std::move(best.a);
  out.b_list = std::move(best.b);
  return out;
}

json search_report_to_json(const SearchReport& r) {
  json a = json::array();
  for (const auto& m : r.a_list) a.push_back(matrix_to_json(m));
  json b = json::array();
  for (const auto& m : r.b_list) b.push_back(matrix_to_json(m));
  return json{{"target", target_to_json(r.target)},
              {"steps", r.steps},
              {"restarts", r.restarts},
              {"accepted", r.accepted},
              {"violation-found", r.violation_found},
              {"min-margin", r.min_margin},
              {"relative-margin", r.relative_margin},
              {"report", report_to_json(r.report)},
              {"instance", {{"a", std::move(a)}, {"b", std::move(b)}}}};
}

SearchReport search_report_from_json(const json& j) {
  try {
    SearchReport r;
    r.target = target_from_json(j.at("target"));
    r.steps = j.at("steps").get<std::size_t>();
    r.restarts = j.at("restarts").get<std::size_t>();
    r.accepted = j.at("accepted").get<std::size_t>();
    r.violation_found = j.at("violation-found").get<bool>();
    r.min_margin = j.at("min-margin").get<double>();
    r.relative_margin = j.at("relative-margin").get<double>();
    r.report = report_from_json(j.at("report"));
    for (const auto& m : j.at("instance").at("a")) r.a_list.push_back(matrix_from_json(m));
    for (const auto& m : j.at("instance").at("b")) r.b_list.push_back(matrix_from_json(m));
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed search report: ") + e.what());
  }
}

}  // namespace tgm
