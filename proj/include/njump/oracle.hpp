#pragma once

// Floating-point cross-check of the exact pipeline. Weights are evaluated in
// logarithmic coordinates s = (log|z1|, log|z2|) <= 0, and integrability of
// |z^A|^2 e^{-2c phi} is judged from the growth of truncated integrals.
// Verdicts are only meaningful away from the exact threshold.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "njump/monomial_ideal.hpp"
#include "njump/newton_body.hpp"

namespace njump {

struct SupportOf {
  NewtonBody body;
};
/// s1 + sum_{k<=K} M^-k log(e^{s1} + k^{-b_k} e^{b_k s2}), b_k = M^{2k}.
struct GuanLi {
  std::int64_t M = 2;
  std::int64_t K = 40;
};
/// log(e^{m1 s1} + e^{m2 s2}).
struct Diagonal {
  double m1 = 1;
  double m2 = 1;
};
/// log sum over generators of e^{<A, s>}.
struct MonomialLog {
  MonomialIdeal ideal;
};

using WeightFn = std::variant<SupportOf, GuanLi, Diagonal, MonomialLog>;

/// Requires s1, s2 <= 0.
double weight_eval(const WeightFn& w, double s1, double s2);

/// Precomputed evaluator for repeated calls on one weight.
std::function<double(double, double)> weight_evaluator(const WeightFn& w);

std::pair<double, double> guanli_gradient(std::int64_t M, std::int64_t K, double s1, double s2);

enum class Verdict { convergent, divergent, inconclusive };
std::string to_string(Verdict v);

struct ProbeResult {
  Verdict verdict = Verdict::inconclusive;
  double slope = 0;
  std::vector<std::pair<double, double>> samples;  // (T, log I(T))
};

struct ProbeOptions {
  double increment_tol = 1e-6;
  double slope_threshold = 0.01;
};

/// Trapezoid quadrature of exp(2<A+1, s> - 2c w(s)) over (-T, 0)^2 for
/// T in {Tmax/4, Tmax/2, 3Tmax/4, Tmax} on one uniform grid of step
/// Tmax/grid (grid is rounded up to a multiple of 4).
ProbeResult integrability_probe(const WeightFn& w, double c, LatticePoint a, double tmax, std::int64_t grid,
                                const ProbeOptions& options = {});

struct OracleCase {
  Rational c;
  LatticePoint a;
};

class MarginViolation : public std::invalid_argument {
 public:
  MarginViolation(std::string message, std::vector<std::size_t> cases)
      : std::invalid_argument(std::move(message)), cases_(std::move(cases)) {}
  const std::vector<std::size_t>& cases() const { return cases_; }

 private:
  std::vector<std::size_t> cases_;
};

struct CaseOutcome {
  std::size_t id = 0;
  OracleCase input;
  double gauge = 0;
  bool exact_member = false;
  ProbeResult probe;
  bool agree = false;
};

struct AgreementReport {
  std::vector<CaseOutcome> cases;
  std::size_t agreements = 0;
  std::size_t mismatches = 0;
  std::size_t inconclusive = 0;

  /// Header: id,c,a1,a2,exact_member,probe_verdict,slope,agree
  std::string csv() const;
};

/// Every case must satisfy |gauge(B, A + (1,1)) - c| >= margin * c; the
/// exact side is membership of A in the multiplier ideal J(c B).
AgreementReport agreement_report(const NewtonBody& body, const std::vector<OracleCase>& cases, double margin,
                                 double tmax, std::int64_t grid = 512, unsigned jobs = 1);

/// Parses lines "c,a1,a2" (an optional header line starting with "c" is
/// skipped).
std::vector<OracleCase> parse_oracle_cases(const std::string& text);

}  // namespace njump
