#include "njump/graded.hpp"

#include <mutex>
#include <numeric>

namespace njump {

namespace {

Integer grid_denominator(std::int64_t m, GridMode mode) {
  if (mode == GridMode::standard) return Integer(m);
  Integer d = 1;
  for (std::int64_t i = 2; i <= m; ++i) mpz_lcm_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(i));
  return d;
}

}  // namespace

NewtonBody inner_polyhedron(const NewtonBody& body, std::int64_t m, std::int64_t xcap, GridMode mode) {
  if (m < 1) throw std::invalid_argument("inner_polyhedron needs m >= 1");
  const Integer d = grid_denominator(m, mode);
  const auto& asym = body.asymptotes();
  Integer j = ceil(asym.x0 * ExactReal(Rational(d)));
  Rational first(j, d);
  first.canonicalize();
  if (ExactReal(first) == asym.x0 && !asym.attained_x) ++j;
  const Integer jmax = Integer(xcap) * d;
  if (j > jmax) throw std::invalid_argument("xcap is left of the body; no grid point to sample");
  std::vector<std::pair<Rational, Rational>> pts;
  const ExactReal scale_d{Rational(d)};
  for (; j <= jmax; ++j) {
    Rational x(j, d);
    x.canonicalize();
    const Integer h = ceil(scale_d * body.boundary_at(ExactReal(x)));
    Rational y(h, d);
    y.canonicalize();
    // skip points already dominated by the last kept point
    if (!pts.empty() && !(y < pts.back().second)) continue;
    pts.emplace_back(std::move(x), std::move(y));
  }
  return NewtonBody::polyhedral(pts);
}

GradedSystem::GradedSystem(NewtonBody base, std::int64_t xcap, GridMode mode)
    : base_(std::move(base)), xcap_(xcap), mode_(mode) {
  if (xcap < 1) throw std::invalid_argument("xcap must be positive");
  if (base_.is_quadrant()) throw std::invalid_argument("the quadrant has no proper inner approximation");
}

MonomialIdeal GradedSystem::ideal(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("graded ideal index must be >= 1");
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
  }
  const NewtonBody ek = scale(inner_polyhedron(base_, k, xcap_, mode_), ExactReal(k));
  MonomialIdeal computed = lattice_staircase(ek, false);
  std::unique_lock lock(mutex_);
  return cache_.try_emplace(k, std::move(computed)).first->second;
}

void GradedSystem::override_ideal(std::int64_t k, MonomialIdeal ideal) {
  std::unique_lock lock(mutex_);
  cache_.insert_or_assign(k, std::move(ideal));
}

MonomialIdeal graded_ideal(const GradedSystem& system, std::int64_t k) { return system.ideal(k); }

GradedCheck graded_axioms_check(const GradedSystem& system, std::int64_t kmax) {
  if (kmax < 2) throw std::invalid_argument("graded_axioms_check needs kmax >= 2");
  GradedCheck report;
  const auto fail = [&](GradedViolation v) {
    report.passed = false;
    report.violation = std::move(v);
    return report;
  };
  for (std::int64_t total = 2; total <= kmax; ++total) {
    for (std::int64_t l = 1; 2 * l <= total; ++l) {
      const std::int64_t m = total - l;
      ++report.checks;
      const MonomialIdeal product = ideal_product(system.ideal(l), system.ideal(m));
      if (!ideal_contains_ideal(system.ideal(total), product)) {
        return fail({l, m, "a_" + std::to_string(l) + " a_" + std::to_string(m) + " is not contained in a_" +
                               std::to_string(total)});
      }
    }
  }
  for (std::int64_t k = 1; k <= kmax; ++k) {
    ++report.checks;
    const MonomialIdeal ak = system.ideal(k);
    for (const auto& g : ak.generators()) {
      if (!system.base().contains(Rational(Rational(g.x) / k), Rational(Rational(g.y) / k), false)) {
        return fail({k, 0, "generator " + monomial_string(g) + " of a_" + std::to_string(k) +
                               " lies outside k times the base body"});
      }
    }
  }
  return report;
}

AsymptoticResult asymptotic_multiplier_ideal(const GradedSystem& system, const Rational& c, std::int64_t qmax) {
  if (sgn(c) <= 0) throw std::invalid_argument("c must be positive");
  if (qmax < 1) throw std::invalid_argument("qmax must be positive");
  AsymptoticResult result{MonomialIdeal::unit(), false, std::nullopt, 0, false, {}};
  const MonomialIdeal howald = multiplier_ideal(system.base(), ExactReal(c));
  for (std::int64_t q = 1; q <= qmax; q *= 2) {
    const NewtonBody newt = newton_polyhedron(system.ideal(q));
    MonomialIdeal j = newt.is_quadrant() ? MonomialIdeal::unit() : multiplier_ideal(newt, ExactReal(Rational(c / q)));
    const bool eq = j == howald;
    result.steps.push_back({q, std::move(j), std::nullopt, eq});
    if (q > qmax / 2) break;  // q * 2 would pass qmax
  }
  auto& steps = result.steps;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    steps[i].contained_in_next = ideal_contains_ideal(steps[i + 1].ideal, steps[i].ideal);
  // stable: the last three ideals agree; stable_from starts the constant tail
  const std::size_t n = steps.size();
  result.stabilized = n >= 3 && steps[n - 1].ideal == steps[n - 2].ideal && steps[n - 2].ideal == steps[n - 3].ideal;
  if (result.stabilized) {
    std::size_t first = n - 1;
    while (first > 0 && steps[first - 1].ideal == steps[n - 1].ideal) --first;
    result.stable_from = steps[first].q;
  }
  result.ideal = steps.back().ideal;
  result.q_used = steps.back().q;
  result.crosscheck = result.stabilized && result.ideal == howald;
  return result;
}

}  // namespace njump
