#include "tgm/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace tgm {

namespace {

constexpr double kCommutatorTol = 1e-10;

const std::array<std::pair<InequalityId, const char*>, 6> kIdNames{{
    {InequalityId::Audenaert, "Audenaert"},
    {InequalityId::BourinUchiyama, "BourinUchiyama"},
    {InequalityId::LemmaChain, "LemmaChain"},
    {InequalityId::MainTheorem, "MainTheorem"},
    {InequalityId::ProofStep11, "ProofStep11"},
    {InequalityId::ProofStep22, "ProofStep22"},
}};

void require_matching_lists(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b) {
  if (a.empty()) throw ShapeError("empty sum");
  if (a.size() != b.size()) {
    throw ShapeError("A-list has " + std::to_string(a.size()) + " matrices, B-list has " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].dim() != a[0].dim() || b[i].dim() != a[0].dim()) throw ShapeError("inputs differ in dimension");
  }
}

Matrix power_matrix(const PositiveMatrix& m, double p) { return power(m, p).matrix(); }

// (sumA, sumB) -> the two right-hand terms of the main theorem chain.
void append_main_rhs(Chain& chain, const PositiveMatrix& sa, const PositiveMatrix& sb, double t, double r,
                     bool printed_form) {
  if (printed_form) {
    const Matrix a4 = power_matrix(sa, r / 4.0);
    const Matrix a2 = power_matrix(sa, r / 2.0);
    const Matrix b2 = power_matrix(sb, r / 2.0);
    chain.terms.push_back({"(sumA)^(r/4)(sumB)^(r/2)(sumA)^(r/4)",
                           singular_values(PositiveMatrix::semidefinite(sandwich(a4, b2)))});
    chain.terms.push_back({"(sumA)^(r/2)(sumB)^(r/2)", singular_values(a2 * b2)});
  } else {
    const Matrix a_pow = power_matrix(sa, (1.0 - t) * r);
    const Matrix b_half = power_matrix(sb, r * t / 2.0);
    const Matrix b_full = power_matrix(sb, r * t);
    chain.terms.push_back({"(sumB)^(rt/2)(sumA)^((1-t)r)(sumB)^(rt/2)",
                           singular_values(PositiveMatrix::semidefinite(sandwich(b_half, a_pow)))});
    chain.terms.push_back({"(sumA)^((1-t)r)(sumB)^(rt)", singular_values(a_pow * b_full)});
  }
}

// With an epsilon scale every pair is shifted once, by the epsilon
// psd_geometric_mean would use for it, and the whole chain is evaluated on the
// shifted instance. Regularizing each mean on its own compares terms built
// from differently shifted inputs, which at t = 1/2 surfaces as spurious
// violations of size about sqrt(eps).
struct Regularized {
  std::vector<PositiveMatrix> a;
  std::vector<PositiveMatrix> b;
  std::optional<double> epsilon;
};

Regularized regularize(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b,
                       const MeanOptions& options) {
  Regularized out{{a.begin(), a.end()}, {b.begin(), b.end()}, std::nullopt};
  if (!options.epsilon_scale) return out;
  if (!(*options.epsilon_scale > 0.0)) throw DomainError("epsilon scale must be positive");
  double largest = 0.0;
  for (std::size_t i = 0; i < out.a.size(); ++i) {
    const double eps = *options.epsilon_scale * (1.0 + std::max(a[i].max_eigenvalue(), b[i].max_eigenvalue()));
    out.a[i] = shifted(a[i], eps);
    out.b[i] = shifted(b[i], eps);
    largest = std::max(largest, eps);
  }
  out.epsilon = largest;
  return out;
}

void flag_theorem_region(Chain& chain, double r) {
  if (r < 1.0) chain.flags.push_back("r < 1 lies outside the theorem's hypothesis r >= 1");
}

}  // namespace

std::string to_string(InequalityId id) {
  for (const auto& [key, name] : kIdNames)
    if (key == id) return name;
  return "?";
}

InequalityId parse_inequality_id(const std::string& text) {
  for (const auto& [key, name] : kIdNames)
    if (text == name) return key;
  throw DomainError("unknown inequality id '" + text + "'");
}

double InequalityReport::scale() const {
  double s = 0.0;
  for (const auto& term : terms) s = std::max(s, std::abs(term.value));
  return s;
}

double InequalityReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : margins) m = std::min(m, x);
  return m;
}

double InequalityReport::band(const Tolerance& tol) const { return tol.rel * scale() + tol.abs; }

bool InequalityReport::is_numerical_tie(const Tolerance& tol) const {
  const double m = min_margin();
  return m < 0.0 && m >= -band(tol);
}

InequalityReport report_for(InequalityId id, const Chain& chain, const ReportParams& base, const NormSpec& spec,
                            const Tolerance& tol) {
  InequalityReport rep;
  rep.inequality_id = id;
  rep.params = base;
  rep.params.norm_spec = spec.to_string();
  rep.regularization_epsilon = chain.epsilon;
  rep.flags = chain.flags;
  for (const auto& term : chain.terms) rep.terms.push_back({term.label, ui_norm(term.sv, spec)});
  for (std::size_t k = 0; k + 1 < rep.terms.size(); ++k) {
    rep.margins.push_back(rep.terms[k + 1].value - rep.terms[k].value);
    const auto fan = weak_majorization(chain.terms[k].sv, chain.terms[k + 1].sv, tol.rel);
    rep.fan_dominance.push_back({fan.holds, fan.margin});
  }
  rep.holds = rep.margins.empty() || rep.min_margin() >= -rep.band(tol);
  return rep;
}

std::vector<InequalityReport> reports_for(InequalityId id, const Chain& chain, const ReportParams& base,
                                          std::span<const NormSpec> specs, const Tolerance& tol) {
  std::vector<InequalityReport> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) out.push_back(report_for(id, chain, base, spec, tol));
  return out;
}

Chain sub_chain(const Chain& chain, std::size_t first, std::size_t count) {
  if (first + count > chain.terms.size()) throw ShapeError("sub_chain range exceeds the chain");
  Chain out;
  out.terms.assign(chain.terms.begin() + static_cast<std::ptrdiff_t>(first),
                   chain.terms.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.epsilon = chain.epsilon;
  out.flags = chain.flags;
  return out;
}

Chain lemma_chain_terms(const PositiveMatrix& a, const PositiveMatrix& b, const MeanParams& params,
                        const MeanOptions& options) {
  params.validate();
  if (a.dim() != b.dim()) throw ShapeError("lemma chain inputs differ in dimension");
  const double t = params.t;
  const double r = params.r;
  const double s = params.s;

  const Regularized reg = regularize(std::span(&a, 1), std::span(&b, 1), options);
  const PositiveMatrix& ra = reg.a.front();
  const PositiveMatrix& rb = reg.b.front();
  Chain chain;
  chain.epsilon = reg.epsilon;
  chain.terms.push_back({"(A#tB)^r", singular_values(power(geometric_mean(ra, rb, t), r))});
  chain.terms.push_back({"A^r#tB^r", singular_values(geometric_mean(power(ra, r), power(rb, r), t))});

  const Matrix a_pow = power_matrix(ra, (1.0 - t) * r * s);
  const Matrix b_half = power_matrix(rb, r * t * s / 2.0);
  const Matrix b_full = power_matrix(rb, r * t * s);
  const PositiveMatrix inner = PositiveMatrix::semidefinite(sandwich(b_half, a_pow));
  chain.terms.push_back({"(B^(rts/2)A^((1-t)rs)B^(rts/2))^(1/s)", singular_values(inner).powered(1.0 / s)});
  chain.terms.push_back({"|A^((1-t)rs)B^(rts)|^(1/s)", singular_values(a_pow * b_full).powered(1.0 / s)});
  return chain;
}

Chain main_theorem_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                         bool printed_form, const MeanOptions& options) {
  require_matching_lists(a, b);
  MeanParams{t, r, 1.0}.validate();
  const Regularized reg = regularize(a, b, options);
  Chain chain;
  chain.epsilon = reg.epsilon;
  std::vector<HermitianMatrix> powered;
  for (std::size_t i = 0; i < a.size(); ++i) powered.push_back(power(geometric_mean(reg.a[i], reg.b[i], t), r).hermitian());
  chain.terms.push_back(
      {"sum(Ai#tBi)^r", singular_values(PositiveMatrix::semidefinite(sum_matrices(powered)))});
  append_main_rhs(chain, sum_positive(reg.a), sum_positive(reg.b), t, r, printed_form);
  flag_theorem_region(chain, r);
  return chain;
}

Chain proof_step_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                       bool printed_form, const MeanOptions& options) {
  require_matching_lists(a, b);
  MeanParams{t, r, 1.0}.validate();
  const Regularized reg = regularize(a, b, options);
  std::vector<PositiveMatrix> means;
  std::vector<HermitianMatrix> powered;
  for (std::size_t i = 0; i < a.size(); ++i) {
    means.push_back(geometric_mean(reg.a[i], reg.b[i], t));
    powered.push_back(power(means.back(), r).hermitian());
  }
  const PositiveMatrix sa = sum_positive(reg.a);
  const PositiveMatrix sb = sum_positive(reg.b);

  Chain chain;
  chain.epsilon = reg.epsilon;
  chain.terms.push_back(
      {"sum(Ai#tBi)^r", singular_values(PositiveMatrix::semidefinite(sum_matrices(powered)))});
  chain.terms.push_back({"(sum Ai#tBi)^r", singular_values(power(sum_positive(means), r))});
  chain.terms.push_back({"((sumA)#t(sumB))^r", singular_values(power(geometric_mean(sa, sb, t), r))});
  append_main_rhs(chain, sa, sb, t, r, printed_form);
  flag_theorem_region(chain, r);
  return chain;
}

RegisteredFunction lookup_function(const std::string& id) {
  if (id == "expm1") return {id, [](double x) { return std::expm1(x); }, true, false};
  if (id == "ratio") return {id, [](double x) { return x / (1.0 + x); }, false, true};
  if (id.rfind("power:", 0) == 0) {
    const std::string arg = id.substr(6);
    std::size_t used = 0;
    double p = std::numeric_limits<double>::quiet_NaN();
    try {
      p = std::stod(arg, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == arg.size() && p > 0.0 && std::isfinite(p)) {
      return {id, [p](double x) { return x == 0.0 ? 0.0 : std::pow(x, p); }, p >= 1.0, p <= 1.0};
    }
  }
  throw DomainError("unregistered function '" + id + "'");
}

Convexity default_direction(const RegisteredFunction& fn) { return fn.convex ? Convexity::Convex : Convexity::Concave; }

std::string to_string(Convexity c) { return c == Convexity::Convex ? "convex" : "concave"; }

Chain bourin_uchiyama_terms(std::span<const PositiveMatrix> a, const std::string& function_id, Convexity direction) {
  if (a.empty()) throw ShapeError("empty sum");
  const RegisteredFunction fn = lookup_function(function_id);
  if ((direction == Convexity::Convex && !fn.convex) || (direction == Convexity::Concave && !fn.concave)) {
    throw DomainError("function '" + function_id + "' is not registered as " + to_string(direction));
  }
  std::vector<HermitianMatrix> images;
  for (const auto& m : a) images.push_back(matrix_function(m, fn.f));
  ChainTerm sum_of_images{"sum f(Ai)", singular_values(PositiveMatrix::semidefinite(sum_matrices(images)))};
  ChainTerm image_of_sum{"f(sum Ai)",
                         singular_values(PositiveMatrix::semidefinite(matrix_function(sum_positive(a), fn.f)))};
  Chain chain;
  if (direction == Convexity::Convex) {
    chain.terms.push_back(std::move(sum_of_images));
    chain.terms.push_back(std::move(image_of_sum));
  } else {
    chain.terms.push_back(std::move(image_of_sum));
    chain.terms.push_back(std::move(sum_of_images));
  }
  return chain;
}

Chain audenaert_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b) {
  require_matching_lists(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double c = commutator_norm(a[i].matrix(), b[i].matrix());
    if (c > kCommutatorTol * (1.0 + frobenius_norm(a[i].matrix()) * frobenius_norm(b[i].matrix()))) {
      throw CommutationError(i, c);
    }
  }
  const std::size_t n = a[0].dim();
  Matrix products(n);
  Matrix roots(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    products = products + a[i].matrix() * b[i].matrix();
    roots = roots + power_matrix(a[i], 0.5) * power_matrix(b[i], 0.5);
  }
  Chain chain;
  chain.terms.push_back({"sum AiBi", singular_values(products)});
  chain.terms.push_back({"(sum Ai^(1/2)Bi^(1/2))^2", singular_values(roots * roots)});
  chain.terms.push_back({"(sumA)(sumB)", singular_values(sum_positive(a).matrix() * sum_positive(b).matrix())});
  return chain;
}

InequalityReport check_lemma_chain(const PositiveMatrix& a, const PositiveMatrix& b, double t, double r, double s,
                                   const NormSpec& spec, const Tolerance& tol) {
  ReportParams params;
  params.n = a.dim();
  params.t = t;
  params.r = r;
  params.s = s;
  return report_for(InequalityId::LemmaChain, lemma_chain_terms(a, b, {t, r, s}), params, spec, tol);
}

InequalityReport check_bourin_uchiyama(std::span<const PositiveMatrix> a, const std::string& function_id,
                                       Convexity direction, const NormSpec& spec, const Tolerance& tol) {
  ReportParams params;
  params.m = a.size();
  params.n = a.empty() ? 0 : a[0].dim();
  params.function_id = function_id;
  return report_for(InequalityId::BourinUchiyama, bourin_uchiyama_terms(a, function_id, direction), params, spec,
                    tol);
}

InequalityReport check_main_theorem(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t,
                                    double r, const NormSpec& spec, bool printed_form, const Tolerance& tol,
                                    const MeanOptions& options) {
  ReportParams params;
  params.m = a.size();
  params.n = a.empty() ? 0 : a[0].dim();
  params.t = t;
  params.r = r;
  return report_for(InequalityId::MainTheorem, main_theorem_terms(a, b, t, r, printed_form, options), params, spec,
                    tol);
}

ProofStepReports check_proof_steps(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t,
                                   double r, const NormSpec& spec, bool printed_form, const Tolerance& tol,
                                   const MeanOptions& options) {
  ReportParams params;
  params.m = a.size();
  params.n = a.empty() ? 0 : a[0].dim();
  params.t = t;
  params.r = r;
  const Chain chain = proof_step_terms(a, b, t, r, printed_form, options);
  return {report_for(InequalityId::ProofStep11, sub_chain(chain, 0, 3), params, spec, tol),
          report_for(InequalityId::ProofStep22, sub_chain(chain, 2, 3), params, spec, tol)};
}

InequalityReport check_audenaert(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b,
                                 const NormSpec& spec, const Tolerance& tol) {
  ReportParams params;
  params.m = a.size();
  params.n = a.empty() ? 0 : a[0].dim();
  return report_for(InequalityId::Audenaert, audenaert_terms(a, b), params, spec, tol);
}

}  // namespace tgm
