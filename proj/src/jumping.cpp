#include "njump/jumping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace njump {

ExactReal lct(const NewtonBody& body) { return gauge(body, {1, 1}); }

std::vector<ExactReal> JumpReport::values() const {
  std::vector<ExactReal> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

bool JumpReport::lists(const ExactReal& v) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), v,
                             [](const JumpEntry& e, const ExactReal& x) { return e.value < x; });
  return it != entries.end() && it->value == v;
}

bool JumpReport::certified_at(const ExactReal& v) const {
  return std::none_of(residuals.begin(), residuals.end(), [&](const ResidualInterval& r) {
    return r.lo < v && (v < r.hi || (r.hi_inclusive && v == r.hi));
  });
}

namespace {

void sort_unique(std::vector<ExactReal>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// k / m for k = 1, 2, ... while k / m <= bound.
void add_multiples(const ExactReal& m, const Rational& bound, std::vector<ExactReal>& out) {
  const Integer kmax = floor(ExactReal(bound) * m);
  for (Integer k = 1; k <= kmax; ++k) out.push_back(ExactReal(Rational(k)) / m);
}

struct Sample {
  ExactReal value;
  LatticePoint witness;
  bool exact = true;
};

using ValueFn = std::function<std::optional<Sample>(LatticePoint)>;

// sup of the values along column p (q -> inf); nullopt means unbounded.
// The side flag says whether the sup is attained at a finite q.
struct SideLimit {
  std::function<std::optional<ExactReal>(std::int64_t)> limit;
  bool attained = false;
};

std::vector<Sample> window_samples(const ValueFn& value, std::int64_t window, unsigned jobs, const Rational& bound) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(window)));
  std::vector<std::vector<Sample>> parts(jobs);
  const ExactReal b(bound);
  const auto work = [&](unsigned t) {
    for (std::int64_t p = 1 + t; p <= window; p += jobs)
      for (std::int64_t q = 1; q <= window; ++q) {
        auto s = value({p, q});
        if (s && s->value.sign() > 0 && !(b < s->value)) parts[t].push_back(std::move(*s));
      }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(work, t);
    for (auto& th : threads) th.join();
  }
  std::vector<Sample> all;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
  // Order by cached doubles; only near-ties fall back to exact comparison.
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) keys.emplace_back(all[i].value.to_double(), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
    if (std::abs(x.first - y.first) > 1e-12 * (std::abs(x.first) + std::abs(y.first))) return x.first < y.first;
    const Sample& a = all[x.second];
    const Sample& b = all[y.second];
    if (a.value != b.value) return a.value < b.value;
    return a.witness < b.witness;
  });
  std::vector<Sample> sorted;
  sorted.reserve(all.size());
  for (const auto& k : keys) sorted.push_back(std::move(all[k.second]));
  all = std::move(sorted);
  all.erase(std::unique(all.begin(), all.end(), [](const Sample& x, const Sample& y) { return x.value == y.value; }),
            all.end());
  return all;
}

void side_residuals(const ValueFn& value, const SideLimit& side, bool transpose, std::int64_t window,
                    const Rational& bound, std::vector<ResidualInterval>& out) {
  const ExactReal b(bound);
  const auto at = [&](std::int64_t p, std::int64_t q) {
    return transpose ? value({q, p}) : value({p, q});
  };
  for (std::int64_t p = 1; p <= window; ++p) {
    const auto next = at(p, window + 1);
    if (!next || b < next->value) continue;
    const auto last = at(p, window);
    const auto lim = side.limit(p);
    if (side.attained && lim && last && last->value == *lim) continue;
    ResidualInterval r;
    r.lo = last ? last->value : ExactReal(0L);
    if (lim && !(b < *lim)) {
      r.hi = *lim;
      r.hi_inclusive = side.attained;
    } else {
      r.hi = b;
      r.hi_inclusive = true;
    }
    out.push_back(std::move(r));
  }
}

JumpReport run_enumeration(const ValueFn& value, const SideLimit& columns, const SideLimit& rows,
                           std::vector<ExactReal> clusters, const Rational& bound, std::int64_t window,
                           unsigned jobs) {
  if (sgn(bound) <= 0) throw std::invalid_argument("bound must be positive");
  if (window < 2) throw std::invalid_argument("window must be at least 2");
  JumpReport report;
  report.bound = bound;
  report.window = window;
  for (auto& s : window_samples(value, window, jobs, bound))
    report.entries.push_back({std::move(s.value), s.witness, false, s.exact});
  for (const auto& c : clusters) {
    auto it = std::lower_bound(report.entries.begin(), report.entries.end(), c,
                               [](const JumpEntry& e, const ExactReal& x) { return e.value < x; });
    if (it != report.entries.end() && it->value == c) {
      it->cluster = true;
    } else {
      report.entries.insert(it, JumpEntry{c, std::nullopt, true, true});
    }
  }
  report.clusters = std::move(clusters);

  side_residuals(value, columns, false, window, bound, report.residuals);
  side_residuals(value, rows, true, window, bound, report.residuals);
  const auto corner = value({window + 1, window + 1});
  if (corner && !(ExactReal(bound) < corner->value)) {
    const auto inner = value({window, window});
    report.residuals.push_back({inner ? inner->value : ExactReal(0L), ExactReal(bound), true});
  }
  auto& res = report.residuals;
  std::sort(res.begin(), res.end(), [](const ResidualInterval& x, const ResidualInterval& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    if (x.hi != y.hi) return x.hi < y.hi;
    return x.hi_inclusive < y.hi_inclusive;
  });
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return report;
}

}  // namespace

std::vector<ExactReal> cluster_points(const NewtonBody& body, const Rational& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("bound must be positive");
  const auto& a = body.asymptotes();
  std::vector<ExactReal> out;
  if (a.x0.sign() > 0 && !a.attained_x) add_multiples(a.x0, bound, out);
  if (a.y0.sign() > 0 && !a.attained_y) add_multiples(a.y0, bound, out);
  sort_unique(out);
  return out;
}

JumpReport enumerate_jumping(const NewtonBody& body, const Rational& bound, std::int64_t window, unsigned jobs) {
  if (body.is_quadrant()) throw std::domain_error("the quadrant has no jumping numbers");
  const ValueFn value = [&](LatticePoint p) -> std::optional<Sample> { return Sample{gauge(body, p), p, true}; };
  const auto& a = body.asymptotes();
  const auto limit = [](const ExactReal& x0) {
    return [x0](std::int64_t p) -> std::optional<ExactReal> {
      if (x0.sign() == 0) return std::nullopt;
      return ExactReal(p) / x0;
    };
  };
  return run_enumeration(value, {limit(a.x0), a.attained_x}, {limit(a.y0), a.attained_y},
                         cluster_points(body, bound), bound, window, jobs);
}

std::vector<ExactReal> mixed_cluster_points(const NewtonBody& phi, const NewtonBody& psi, const Rational& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("bound must be positive");
  const auto& a = phi.asymptotes();
  const auto& b = psi.asymptotes();
  std::vector<ExactReal> out;
  const ExactReal cb(bound);
  // c * s_a + s_b = k for k in Z>0, 0 < c <= bound
  const auto side = [&](const ExactReal& sa, const ExactReal& sb, bool attained) {
    if (attained || sa.sign() <= 0) return;
    const Integer kmax = floor(cb * sa + sb);
    for (Integer k = floor(sb) + 1; k <= kmax; ++k) {
      const ExactReal c = (ExactReal(Rational(k)) - sb) / sa;
      if (c.sign() > 0) out.push_back(c);
    }
  };
  side(a.x0, b.x0, a.attained_x && b.attained_x);
  side(a.y0, b.y0, a.attained_y && b.attained_y);
  sort_unique(out);
  return out;
}

JumpReport enumerate_mixed(const NewtonBody& phi, const NewtonBody& psi, const Rational& bound, std::int64_t window,
                           unsigned jobs) {
  if (phi.is_quadrant()) throw NoSolution("phi is the quadrant; c is unbounded");
  const ValueFn value = [&](LatticePoint p) -> std::optional<Sample> {
    try {
      auto r = mixed_gauge(phi, psi, p);
      return Sample{std::move(r.value), p, r.exact};
    } catch (const NoSolution&) {
      return std::nullopt;
    }
  };
  const auto& a = phi.asymptotes();
  const auto& b = psi.asymptotes();
  const auto limit = [](const ExactReal& sa, const ExactReal& sb) {
    return [sa, sb](std::int64_t p) -> std::optional<ExactReal> {
      if (sa.sign() == 0) return std::nullopt;
      return (ExactReal(p) - sb) / sa;
    };
  };
  return run_enumeration(value, {limit(a.x0, b.x0), a.attained_x && b.attained_x},
                         {limit(a.y0, b.y0), a.attained_y && b.attained_y}, mixed_cluster_points(phi, psi, bound),
                         bound, window, jobs);
}

CheckReport mtimes_check(const NewtonBody& body, const std::vector<LatticePoint>& samples, std::int64_t mmax) {
  CheckReport report;
  if (samples.empty() || mmax <= 1) return report;
  std::int64_t reach = 2;
  ExactReal top(0L);
  for (const auto& p : samples) {
    reach = std::max({reach, mmax * p.x, mmax * p.y});
    top = max(top, ExactReal(mmax) * gauge(body, p));
  }
  const Rational bound(ceil(top));
  const JumpReport wide = enumerate_jumping(body, bound, reach);
  for (const auto& p : samples) {
    const ExactReal g = gauge(body, p);
    for (std::int64_t m = 2; m <= mmax; ++m) {
      ++report.checks;
      const ExactReal mg = ExactReal(m) * g;
      std::ostringstream where;
      where << "p = (" << p.x << ", " << p.y << "), m = " << m;
      if (gauge(body, {m * p.x, m * p.y}) != mg) {
        report.failures.push_back({where.str() + ": gauge(m p) != m gauge(p)"});
      } else if (!wide.lists(mg)) {
        report.failures.push_back({where.str() + ": " + to_string(mg) + " not listed"});
      }
    }
  }
  report.passed = report.failures.empty();
  return report;
}

CheckReport gap_check(const JumpReport& report, const ExactReal& lct_value) {
  CheckReport out;
  ExactReal prev(0L);
  for (const auto& e : report.entries) {
    const ExactReal& v = e.value;
    const bool hidden = std::any_of(report.residuals.begin(), report.residuals.end(),
                                    [&](const ResidualInterval& r) { return r.lo < v && prev < r.hi; });
    if (!hidden) {
      ++out.checks;
      const std::vector<ExactReal> terms{v, -prev, -lct_value};
      if (sign_of_sum(terms) > 0) {
        out.failures.push_back({"gap " + to_string(prev) + " -> " + to_string(v) + " exceeds " + to_string(lct_value)});
      }
    }
    prev = v;
  }
  out.passed = out.failures.empty();
  return out;
}

// ---------------------------------------------------------------------------

bool JumpSet::contains(const ExactReal& v) const {
  if (complete_below < v) {
    throw std::out_of_range("membership of " + to_string(v) + " is not certified above " + to_string(complete_below));
  }
  return std::binary_search(values.begin(), values.end(), v);
}

namespace {

void diagonal_values(const std::vector<Rational>& m, std::size_t i, const Rational& acc, const Rational& bound,
                     std::vector<ExactReal>& out) {
  if (i == m.size()) {
    out.push_back(ExactReal(acc));
    return;
  }
  for (Rational t = acc + 1 / m[i]; t <= bound; t += 1 / m[i]) {
    // remaining coordinates add at least 1/m_j each
    Rational rest = 0;
    for (std::size_t j = i + 1; j < m.size(); ++j) rest += 1 / m[j];
    if (t + rest > bound) break;
    diagonal_values(m, i + 1, t, bound, out);
  }
}

}  // namespace

const std::vector<SaitoRow>& saito_ideal_table() {
  static const std::vector<SaitoRow> table{
      {Rational(0), {{0, 0}}},
      {Rational(9, 20), {{0, 1}, {1, 0}}},
      {Rational(13, 20), {{0, 1}, {2, 0}}},
      {Rational(7, 10), {{0, 2}, {1, 1}, {2, 0}}},
      {Rational(17, 20), {{0, 2}, {1, 1}, {3, 0}}},
      {Rational(9, 10), {{0, 2}, {2, 1}, {3, 0}}},
      {Rational(19, 20), {{0, 3}, {1, 2}, {2, 1}, {3, 0}}},
  };
  return table;
}

JumpSet builtin_jump_set(const std::string& label, const JumpSetParams& params, const Rational& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("bound must be positive");
  JumpSet set;
  set.label = label;
  set.complete_below = ExactReal(bound);
  const ExactReal b(bound);
  if (label == "koike") {
    if (!params.a || *params.a < 2) throw std::invalid_argument("koike needs an integer a >= 2");
    const Integer a2 = Integer(*params.a) * *params.a;
    // value >= p (1 + sqrt(2a^2 - 1)) / 2 since q < p
    const ExactReal slope = (ExactReal(1L) + ExactReal::sqrt(Rational(2 * a2 - 1))) / ExactReal(2L);
    for (std::int64_t p = 1; !(b < ExactReal(p) * slope); ++p) {
      for (std::int64_t q = p - 2; q >= 0; q -= 2) {
        const Integer p2 = Integer(p) * p;
        const ExactReal v = (ExactReal(p) + ExactReal::sqrt(Rational(2 * a2 * p2 - Integer(q) * q))) / ExactReal(2L);
        if (!(b < v)) set.values.push_back(v);
      }
    }
  } else if (label == "saito") {
    for (const auto& row : saito_ideal_table()) {
      if (sgn(row.from) == 0) continue;
      for (Rational v = row.from; v <= bound; v += 1) set.values.push_back(ExactReal(v));
    }
    for (Rational v = 1; v <= bound; v += 1) set.values.push_back(ExactReal(v));
  } else if (label == "elsv") {
    const std::int64_t window = params.window.value_or(60);
    const JumpReport r = enumerate_jumping(NewtonBody::hyperbola(1, 1, 1), bound, window);
    set.values = r.values();
    set.residuals = r.residuals;
    for (const auto& res : r.residuals) set.complete_below = min(set.complete_below, res.lo);
  } else if (label == "diagonal") {
    if (params.m.empty()) throw std::invalid_argument("diagonal needs exponents m1..mn");
    for (const auto& m : params.m)
      if (sgn(m) <= 0) throw std::invalid_argument("diagonal exponents must be positive");
    diagonal_values(params.m, 0, Rational(0), bound, set.values);
  } else {
    throw std::invalid_argument("unknown jump set \"" + label + "\" (koike, saito, elsv, diagonal)");
  }
  sort_unique(set.values);
  return set;
}

CheckReport mtimes_check(const JumpSet& set, std::int64_t mmax) {
  CheckReport report;
  for (const auto& v : set.values) {
    for (std::int64_t m = 2; m <= mmax; ++m) {
      const ExactReal mv = ExactReal(m) * v;
      if (set.complete_below < mv) break;
      ++report.checks;
      if (!set.contains(mv)) {
        report.failures.push_back({std::to_string(m) + " * " + to_string(v) + " = " + to_string(mv) + " is not in the set"});
      }
    }
  }
  report.passed = report.failures.empty();
  return report;
}

PeriodReport period_falsify(const JumpSet& set, const Rational& period, std::int64_t probes,
                            std::optional<ExactReal> alpha) {
  if (sgn(period) <= 0) throw std::invalid_argument("period must be positive");
  if (probes < 1) throw std::invalid_argument("probes must be positive");
  PeriodReport report;
  report.period = ExactReal(period);
  report.probes = probes;
  const ExactReal span = ExactReal(Rational(period * probes));
  std::vector<ExactReal> alphas;
  if (alpha) {
    if (set.complete_below < *alpha + span) {
      throw std::domain_error("alpha + probes * period exceeds the certified bound " + to_string(set.complete_below));
    }
    alphas.push_back(*alpha);
  } else {
    for (const auto& v : set.values)
      if (!(set.complete_below < v + span)) alphas.push_back(v);
  }
  if (alphas.empty()) {
    throw std::domain_error("insufficient completeness: no alpha has " + std::to_string(probes) +
                            " translates below " + to_string(set.complete_below));
  }
  for (const auto& a : alphas) {
    PeriodEvidence ev{a, {}};
    for (std::int64_t m = 1; m <= probes; ++m)
      if (!set.contains(a + ExactReal(Rational(period * m)))) ev.misses.push_back(m);
    if (ev.misses.size() > (report.per_alpha.empty() ? 0 : report.per_alpha[report.best].misses.size()))
      report.best = report.per_alpha.size();
    report.per_alpha.push_back(std::move(ev));
  }
  report.falsified = report.per_alpha[report.best].misses.size() == static_cast<std::size_t>(probes);
  return report;
}

std::vector<std::pair<std::int64_t, std::int64_t>> translation_search(std::int64_t e, std::int64_t c, std::int64_t n) {
  if (e < 1 || c < 1 || n < 1) throw std::invalid_argument("translation_search needs positive e, c, n");
  // rs / (r + s) = (e + c (e + 1)) / (e + 1)
  const Integer num = Integer(e) + Integer(c) * (e + 1);
  const Integer den = Integer(e) + 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t r = 1; r <= n; ++r)
    for (std::int64_t s = r; s <= n; ++s)
      if (Integer(r) * s * den == num * (r + s)) out.emplace_back(r, s);
  return out;
}

}  // namespace njump
