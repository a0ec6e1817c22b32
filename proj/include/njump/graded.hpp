#pragma once

// Graded systems a_k = lattice points of k * R_k, with R_k rational inner
// polyhedra of a base body, and the asymptotic multiplier ideal.

#include <map>
#include <optional>
#include <shared_mutex>

#include "njump/monomial_ideal.hpp"

namespace njump {

/// standard: grid 1/m (R_m is contained in R_{2m}).
/// nested: grid 1/lcm(1..m) (R_l contained in R_m whenever l <= m).
enum class GridMode { standard, nested };

/// Staircase hull of (x, ceil(D f(x)) / D) over grid points x = j/D with
/// x0 <= x <= xcap (x0 itself only when attained). Contained in the body.
NewtonBody inner_polyhedron(const NewtonBody& body, std::int64_t m, std::int64_t xcap,
                            GridMode mode = GridMode::standard);

class GradedSystem {
 public:
  explicit GradedSystem(NewtonBody base, std::int64_t xcap = 8, GridMode mode = GridMode::standard);

  const NewtonBody& base() const { return base_; }
  std::int64_t xcap() const { return xcap_; }
  GridMode mode() const { return mode_; }

  /// a_k, memoized; safe to call from several threads.
  MonomialIdeal ideal(std::int64_t k) const;
  /// Replaces a_k; used to build deliberately broken systems.
  void override_ideal(std::int64_t k, MonomialIdeal ideal);

 private:
  NewtonBody base_;
  std::int64_t xcap_;
  GridMode mode_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::int64_t, MonomialIdeal> cache_;
};

MonomialIdeal graded_ideal(const GradedSystem& system, std::int64_t k);

struct GradedViolation {
  std::int64_t l = 0;
  std::int64_t m = 0;  // 0 for a Newton-polyhedron violation at k = l
  std::string detail;
};

struct GradedCheck {
  bool passed = true;
  std::size_t checks = 0;
  std::optional<GradedViolation> violation;  // first one found
};

/// a_l a_m in a_{l+m} for l <= m, l + m <= kmax, then Newt(a_k)/k in base.
GradedCheck graded_axioms_check(const GradedSystem& system, std::int64_t kmax);

struct AsymptoticStep {
  std::int64_t q = 0;
  MonomialIdeal ideal;                   // J((c/q) a_q)
  std::optional<bool> contained_in_next; // J_q in J_{2q}; empty for the last q
  bool equals_howald = false;            // J_q == multiplier_ideal(base, c)
};

struct AsymptoticResult {
  MonomialIdeal ideal;  // J at the largest q computed
  bool stabilized = false;  // the last three doublings agree
  std::optional<std::int64_t> stable_from;  // first q of the constant tail
  std::int64_t q_used = 0;
  bool crosscheck = false;
  std::vector<AsymptoticStep> steps;
};

/// q runs over 1, 2, 4, ... <= qmax.
AsymptoticResult asymptotic_multiplier_ideal(const GradedSystem& system, const Rational& c, std::int64_t qmax);

}  // namespace njump
