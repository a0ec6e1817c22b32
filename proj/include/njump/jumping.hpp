#pragma once

// Jumping numbers, cluster points, mixed jumping numbers, and fixture jump
// sets together with the checks run against them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "njump/newton_body.hpp"

namespace njump {

ExactReal lct(const NewtonBody& body);

struct JumpEntry {
  ExactReal value;
  /// Smallest (p, q) in lexicographic order realizing the value; empty for
  /// cluster points that no window point realizes.
  std::optional<LatticePoint> witness;
  bool cluster = false;
  /// false when the value came from the bisection fallback of mixed_gauge.
  bool exact = true;
};

/// Open interval (lo, hi) (or (lo, hi] when hi_inclusive) where jumping
/// numbers with witnesses outside the window may exist.
struct ResidualInterval {
  ExactReal lo;
  ExactReal hi;
  bool hi_inclusive = false;
  friend bool operator==(const ResidualInterval&, const ResidualInterval&) = default;
};

struct JumpReport {
  Rational bound;
  std::int64_t window = 0;
  std::vector<JumpEntry> entries;  // sorted, distinct values in (0, bound]
  std::vector<ExactReal> clusters;
  std::vector<ResidualInterval> residuals;

  std::vector<ExactReal> values() const;
  bool lists(const ExactReal& v) const;
  /// True when v lies in no residual interval, so the listing is complete at v.
  bool certified_at(const ExactReal& v) const;
};

/// { k/m <= bound : k >= 1, m in S } with S the non-attained positive asymptotes.
std::vector<ExactReal> cluster_points(const NewtonBody& body, const Rational& bound);

/// Gauges of the window 1 <= p, q <= window, cluster points, and residuals.
/// jobs > 1 splits the window rows across threads; output is identical.
JumpReport enumerate_jumping(const NewtonBody& body, const Rational& bound, std::int64_t window, unsigned jobs = 1);

/// c with c * x0(phi) + x0(psi) a positive integer on a non-attained side
/// of c*phi + psi (and the same for y).
std::vector<ExactReal> mixed_cluster_points(const NewtonBody& phi, const NewtonBody& psi, const Rational& bound);

JumpReport enumerate_mixed(const NewtonBody& phi, const NewtonBody& psi, const Rational& bound, std::int64_t window,
                           unsigned jobs = 1);

struct CheckFailure {
  std::string detail;
};

struct CheckReport {
  bool passed = true;
  std::size_t checks = 0;
  std::vector<CheckFailure> failures;
};

/// gauge(m p) == m gauge(p) and m gauge(p) listed by an enumeration wide
/// enough to contain the witness m p.
CheckReport mtimes_check(const NewtonBody& body, const std::vector<LatticePoint>& samples, std::int64_t mmax);

/// Consecutive jumping numbers (starting from 0) differ by at most lct,
/// skipping pairs whose gap meets a residual interval.
CheckReport gap_check(const JumpReport& report, const ExactReal& lct_value);

struct JumpSet {
  std::string label;
  std::vector<ExactReal> values;  // sorted, distinct
  /// Every member <= complete_below is in values.
  ExactReal complete_below;
  std::vector<ResidualInterval> residuals;

  /// Exact membership; throws std::out_of_range above complete_below.
  bool contains(const ExactReal& v) const;
};

struct JumpSetParams {
  std::optional<std::int64_t> a;      // koike
  std::vector<Rational> m;            // diagonal exponents
  std::optional<std::int64_t> window; // elsv, default 60
};

/// Labels: koike (a >= 2), saito, elsv, diagonal (m1..mn > 0).
JumpSet builtin_jump_set(const std::string& label, const JumpSetParams& params, const Rational& bound);

/// The non-monomial fixture's multiplier ideals on [0, 1): (start of the
/// constancy interval, generators as exponent pairs).
struct SaitoRow {
  Rational from;
  std::vector<LatticePoint> generators;
};
const std::vector<SaitoRow>& saito_ideal_table();

/// m v in the set for every v and 2 <= m <= mmax with m v <= complete_below.
CheckReport mtimes_check(const JumpSet& set, std::int64_t mmax);

struct PeriodEvidence {
  ExactReal alpha;
  std::vector<std::int64_t> misses;  // m in [1, probes] with alpha + m c not in S
};

struct PeriodReport {
  ExactReal period;
  std::int64_t probes = 0;
  std::vector<PeriodEvidence> per_alpha;
  std::size_t best = 0;  // index into per_alpha with the most misses
  bool falsified = false;  // some alpha misses every probe
};

/// Tests translates alpha + m c for every alpha in S whose probes stay under
/// complete_below, or only the given alpha. Throws std::domain_error when no
/// alpha can be tested.
PeriodReport period_falsify(const JumpSet& set, const Rational& period, std::int64_t probes,
                            std::optional<ExactReal> alpha = std::nullopt);

/// Pairs 1 <= r <= s <= n with rs / (r + s) = e / (e + 1) + c.
std::vector<std::pair<std::int64_t, std::int64_t>> translation_search(std::int64_t e, std::int64_t c, std::int64_t n);

}  // namespace njump
