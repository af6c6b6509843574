#pragma once

// Executable forms of the norm inequalities for geometric means. Each check
// evaluates the terms of one inequality chain, left to right, and reports the
// signed margins between consecutive terms.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgm/means.hpp"
#include "tgm/norms.hpp"

namespace tgm {

enum class InequalityId { Audenaert, BourinUchiyama, LemmaChain, MainTheorem, ProofStep11, ProofStep22 };

std::string to_string(InequalityId id);
/// Accepts the enum spelling, e.g. "MainTheorem".
InequalityId parse_inequality_id(const std::string& text);

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
};

struct ReportParams {
  std::size_t m = 1;
  std::size_t n = 1;
  std::optional<double> t;
  std::optional<double> r;
  std::optional<double> s;
  std::string norm_spec;
  std::optional<std::string> function_id;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ReportParams&, const ReportParams&) = default;
};

struct ReportTerm {
  std::string label;
  double value = 0.0;

  friend bool operator==(const ReportTerm&, const ReportTerm&) = default;
};

struct FanVerdict {
  bool holds = true;
  double margin = 0.0;

  friend bool operator==(const FanVerdict&, const FanVerdict&) = default;
};

/// One evaluated inequality instance.
///
/// Invariants: margins[k] = terms[k+1].value - terms[k].value, and
/// holds <=> min(margins) >= -(rel * scale + abs) with scale the largest term.
/// fan_dominance[k] certifies the k-th step for every unitarily invariant norm
/// at once (weak majorization of singular values).
struct InequalityReport {
  InequalityId inequality_id = InequalityId::MainTheorem;
  ReportParams params;
  std::vector<ReportTerm> terms;
  std::vector<double> margins;
  bool holds = true;
  std::optional<double> regularization_epsilon;
  std::vector<FanVerdict> fan_dominance;
  std::vector<std::string> flags;

  double scale() const;
  double min_margin() const;
  /// The tolerance band width rel * scale + abs.
  double band(const Tolerance& tol) const;
  /// Margin in (-band, 0): float noise rather than a counterexample.
  bool is_numerical_tie(const Tolerance& tol) const;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

/// One term of a chain before a norm is chosen.
struct ChainTerm {
  std::string label;
  SingularValues sv;
};

/// The evaluated terms of one instance, reusable across norm specs.
struct Chain {
  std::vector<ChainTerm> terms;
  std::optional<double> epsilon;
  std::vector<std::string> flags;
};

/// Turns a chain into one report per norm spec.
std::vector<InequalityReport> reports_for(InequalityId id, const Chain& chain, const ReportParams& base,
                                          std::span<const NormSpec> specs, const Tolerance& tol = {});
InequalityReport report_for(InequalityId id, const Chain& chain, const ReportParams& base, const NormSpec& spec,
                            const Tolerance& tol = {});

/// Terms [first, first + count) of a chain, keeping epsilon and flags.
Chain sub_chain(const Chain& chain, std::size_t first, std::size_t count);

// --- chain evaluation -----------------------------------------------------

/// (A#tB)^r, A^r#tB^r, (B^(rts/2) A^((1-t)rs) B^(rts/2))^(1/s), |A^((1-t)rs) B^(rts)|^(1/s).
Chain lemma_chain_terms(const PositiveMatrix& a, const PositiveMatrix& b, const MeanParams& params,
                        const MeanOptions& options = {});

/// printed_form: sum (Ai#tBi)^r, (sumA)^(r/4)(sumB)^(r/2)(sumA)^(r/4), (sumA)^(r/2)(sumB)^(r/2).
/// Otherwise the t-dependent right-hand sides
/// (sumB)^(rt/2)(sumA)^((1-t)r)(sumB)^(rt/2) and (sumA)^((1-t)r)(sumB)^(rt).
Chain main_theorem_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                         bool printed_form, const MeanOptions& options = {});

/// Five terms: sum (Ai#tBi)^r, (sum Ai#tBi)^r, ((sumA)#t(sumB))^r, then the two
/// right-hand terms of the main theorem chain.
Chain proof_step_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                       bool printed_form, const MeanOptions& options = {});

enum class Convexity { Convex, Concave };

/// Members of the registered scalar family, all with f(0) = 0 and f >= 0 on
/// [0, inf): "power:<p>" (p > 0; convex for p >= 1, concave for p <= 1),
/// "expm1" (convex), "ratio" = x/(1+x) (concave).
struct RegisteredFunction {
  std::string id;
  ScalarFunction f;
  bool convex;
  bool concave;
};

/// Throws DomainError("unregistered function ...") for unknown ids.
RegisteredFunction lookup_function(const std::string& id);
/// The direction a function is checked in when none is given explicitly.
Convexity default_direction(const RegisteredFunction& fn);
std::string to_string(Convexity c);

/// Convex: sum f(Ai) then f(sum Ai). Concave: the same two terms in reverse,
/// so the chain always reads "left <= right".
Chain bourin_uchiyama_terms(std::span<const PositiveMatrix> a, const std::string& function_id, Convexity direction);

/// sum AiBi, (sum Ai^(1/2) Bi^(1/2))^2, (sumA)(sumB). Every pair must commute:
/// ||AiBi - BiAi||_F <= 1e-10 (1 + ||Ai||_F ||Bi||_F), else CommutationError.
Chain audenaert_terms(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b);

// --- single-norm checks ---------------------------------------------------

InequalityReport check_lemma_chain(const PositiveMatrix& a, const PositiveMatrix& b, double t, double r, double s,
                                   const NormSpec& spec, const Tolerance& tol = {});

InequalityReport check_bourin_uchiyama(std::span<const PositiveMatrix> a, const std::string& function_id,
                                       Convexity direction, const NormSpec& spec, const Tolerance& tol = {});

InequalityReport check_main_theorem(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t,
                                    double r, const NormSpec& spec, bool printed_form, const Tolerance& tol = {},
                                    const MeanOptions& options = {});

/// The two halves of the main theorem's argument as separate reports sharing
/// the term ((sumA)#t(sumB))^r: step11 covers the convexity/concavity half
/// (first three terms), step22 the log-majorization half (last three), so a
/// failure localizes to one of them. The right-hand terms default to the
/// t-dependent form, which is what the lemma delivers for general t; at
/// t = 1/2 both forms have the same norms.
struct ProofStepReports {
  InequalityReport step11;
  InequalityReport step22;
};

ProofStepReports check_proof_steps(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t,
                                   double r, const NormSpec& spec, bool printed_form = false,
                                   const Tolerance& tol = {}, const MeanOptions& options = {});

InequalityReport check_audenaert(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b,
                                 const NormSpec& spec, const Tolerance& tol = {});

}  // namespace tgm
