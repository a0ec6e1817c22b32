// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "njump/graded.hpp"
#include "njump/jumping.hpp"
#include "njump/oracle.hpp"
#include "support/random_bodies.hpp"

using namespace njump;
using testing::q;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + notes_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
};

std::string join(const std::vector<ExactReal>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + to_string(x);
  return "{" + s + "}";
}

std::vector<ExactReal> integers_up_to(long n, long den = 1) {
  std::vector<ExactReal> v;
  for (long k = 1; k * 1 <= n * den; ++k) v.emplace_back(q(k, den));
  return v;
}

Outcome elsv_set() {
  Tally t;
  const auto rep = enumerate_jumping(NewtonBody::hyperbola(1, 1, 1), 3, 60);
  std::set<Rational> oracle;
  for (long e = 1; e <= 60; ++e)
    for (long f = 1; f <= 60; ++f) {
      const Rational v = q(e * f, e + f);
      if (v <= 3) oracle.insert(v);
    }
  std::vector<ExactReal> expected(oracle.begin(), oracle.end());
  t.expect(rep.values() == expected, "value set differs from ef/(e+f) with e, f <= 60");
  for (const auto& entry : rep.entries) {
    if (!entry.witness) {
      t.expect(false, "missing witness for " + to_string(entry.value));
      continue;
    }
    const auto [p, qq] = *entry.witness;
    t.expect(p <= 60 && qq <= 60 && ExactReal(q(p * qq, p + qq)) == entry.value,
             "witness does not realize " + to_string(entry.value));
  }
  t.expect(rep.clusters == integers_up_to(3), "clusters " + join(rep.clusters));
  return t.done(std::to_string(rep.entries.size()) + " values, clusters {1, 2, 3}");
}

Outcome cluster_classifier() {
  Tally t;
  const Rational bound = 6;
  const auto h = cluster_points(NewtonBody::hyperbola(1, 1, 1), bound);
  t.expect(h == integers_up_to(6), "hyperbola(1,1,1): " + join(h));
  const auto xy = cluster_points(NewtonBody::hyperbola(0, 0, 1), bound);
  t.expect(xy.empty(), "hyperbola(0,0,1): " + join(xy));
  const auto p = cluster_points(NewtonBody::polyhedral({{1, 2}, {3, 1}}), bound);
  t.expect(p.empty(), "polyhedral{(1,2),(3,1)}: " + join(p));
  const auto half = cluster_points(NewtonBody::hyperbola(2, 1, 1), bound);
  t.expect(half == integers_up_to(6, 2), "hyperbola(2,1,1): " + join(half));
  return t.done("four bodies up to 6");
}

Outcome mixed_sets() {
  Tally t;
  const auto xy = NewtonBody::hyperbola(0, 0, 1);
  const auto h = NewtonBody::hyperbola(1, 1, 1);
  const auto rel = enumerate_mixed(xy, h, q(39, 10), 30);
  std::vector<ExactReal> expected;
  for (long k = 2; k <= 24; ++k) expected.push_back(ExactReal::sqrt(k) - 1L);
  t.expect(rel.values() == expected, "sqrt(k) - 1 set: " + join(rel.values()));
  t.expect(rel.residuals.empty(), "unexpected residual intervals below 39/10");

  const auto phi = minkowski_sum(h, NewtonBody::polyhedral({{1, 0}}));
  const auto rep = enumerate_mixed(phi, NewtonBody::polyhedral({{0, 0}}), 10, 10);
  for (long p = 1; p <= 10; ++p)
    for (long qq = 1; qq <= 10; ++qq) {
      const ExactReal v = (ExactReal(p + 2 * qq) - ExactReal::sqrt(p * p + 4 * qq * qq)) / ExactReal(2L);
      const bool listed = rep.lists(v);
      t.expect(listed, "missing (p + 2q - sqrt(p^2 + 4q^2))/2 at p=" + std::to_string(p) + " q=" + std::to_string(qq));
      const auto it = std::find_if(rep.entries.begin(), rep.entries.end(), [&](const auto& e) { return e.value == v; });
      if (listed) t.expect(it->exact, "non-exact value " + to_string(v));
    }
  return t.done("23 + 100 values exact");
}

Outcome minkowski_identities() {
  Tally t;
  const auto h = NewtonBody::hyperbola(1, 1, 1);
  const auto xy = NewtonBody::hyperbola(0, 0, 1);
  for (const Rational& c : {q(1, 2), q(1), q(7, 3)}) {
    const Rational s = (c + 1) * (c + 1);
    t.expect(equal_bodies(minkowski_sum(h, scale(xy, ExactReal(c))), NewtonBody::hyperbola(1, 1, s)),
             "c = " + to_string(c));
  }
  t.expect(equal_bodies(minkowski_sum(h, NewtonBody::polyhedral({{1, 0}})), NewtonBody::hyperbola(2, 1, 1)),
           "hyperbola(1,1,1) + polyhedral{(1,0)}");
  return t.done("canonical forms equal");
}

Outcome diagonal_sets() {
  Tally t;
  for (const auto& [m1, m2] : std::vector<std::pair<long, long>>{{2, 3}, {1, 1}, {5, 2}}) {
    JumpSetParams params;
    params.m = {q(m1), q(m2)};
    const auto builtin = builtin_jump_set("diagonal", params, 4);
    const auto rep = enumerate_jumping(NewtonBody::polyhedral({{q(m1), q(0)}, {q(0), q(m2)}}), 4, 40);
    const std::string label = "(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    t.expect(rep.residuals.empty(), label + " enumeration left residuals");
    t.expect(builtin.values == rep.values(), label + ": " + join(builtin.values) + " vs " + join(rep.values()));
  }
  return t.done("three exponent pairs up to 4");
}

Outcome multiples_property() {
  Tally t;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> coord(1, 12);
  int bodies = 0;
  while (bodies < 200) {
    const NewtonBody body = testing::random_body(rng);
    if (body.is_quadrant()) continue;
    ++bodies;
    std::vector<LatticePoint> samples;
    for (int i = 0; i < 20; ++i) samples.push_back({coord(rng), coord(rng)});
    for (const auto& p : samples) {
      const ExactReal g = gauge(body, p);
      for (std::int64_t m = 2; m <= 5; ++m)
        t.expect(gauge(body, {m * p.x, m * p.y}) == ExactReal(m) * g, "gauge homogeneity on " + describe(body));
    }
    const auto rep = mtimes_check(body, samples, 5);
    t.expect(rep.passed, rep.failures.empty() ? "mtimes" : rep.failures.front().detail);
  }
  return t.done("200 bodies x 20 samples, m <= 5");
}

Outcome gap_bound() {
  Tally t;
  const auto h = NewtonBody::hyperbola(1, 1, 1);
  const std::vector<NewtonBody> fixtures{
      h,
      NewtonBody::hyperbola(0, 0, 1),
      NewtonBody::hyperbola(2, 1, 1),
      NewtonBody::hyperbola(q(1, 2), q(1, 3), q(4, 9)),
      NewtonBody::diagonal(2, 3),
      NewtonBody::diagonal(5, 2),
      NewtonBody::polyhedral({{1, 2}, {3, 1}}),
      NewtonBody::polyhedral({{0, 3}, {1, 1}, {3, 0}}),
      minkowski_sum(h, scale(NewtonBody::hyperbola(0, 0, 1), ExactReal(q(7, 3)))),
      minkowski_sum(NewtonBody::hyperbola(0, 0, 4), NewtonBody::polyhedral({{0, 2}, {1, 1}, {2, 0}})),
  };
  std::size_t checks = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto rep = enumerate_jumping(fixtures[i], 3, 30);
    const auto g = gap_check(rep, lct(fixtures[i]));
    checks += g.checks;
    t.expect(g.passed && g.checks > 0, "fixture " + std::to_string(i) + (g.failures.empty() ? "" : ": " + g.failures.front().detail));
  }
  return t.done("ten fixtures, " + std::to_string(checks) + " consecutive gaps");
}

Outcome saito_fixture() {
  Tally t;
  const auto s = builtin_jump_set("saito", {}, 3);
  const auto m = mtimes_check(s, 3);
  bool found = false;
  for (const auto& f : m.failures) found = found || f.detail == "3 * 9/20 = 27/20 is not in the set";
  t.expect(!m.passed && found, "violation 3 * 9/20 = 27/20 not reported");
  const auto p = period_falsify(s, 1, 2);
  std::size_t misses = 0;
  for (const auto& e : p.per_alpha) misses += e.misses.size();
  t.expect(misses == 0 && !p.falsified, std::to_string(misses) + " misses at period 1");
  return t.done("27/20 violation reported, period 1 with 0 misses over " + std::to_string(p.per_alpha.size()) + " alphas");
}

Outcome koike_period() {
  Tally t;
  JumpSetParams params;
  params.a = 2;
  const auto k = builtin_jump_set("koike", params, 60);
  const ExactReal alpha = ExactReal(1L) + ExactReal(2L) * ExactReal::sqrt(2);
  t.expect(k.contains(alpha), "alpha = 1 + 2 sqrt(2) is not a jumping number");
  for (long c : {1L, 2L}) {
    const auto rep = period_falsify(k, c, 8, alpha);
    t.expect(rep.per_alpha.size() == 1 && rep.per_alpha[0].misses.size() == 8,
             "c = " + std::to_string(c) + ": not all 8 probes miss");
  }
  return t.done("all 8 probes miss for c = 1, 2");
}

Outcome graded_crosscheck() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& base : {NewtonBody::hyperbola(1, 1, 1), NewtonBody::polyhedral({{2, 0}, {0, 3}})}) {
    const GradedSystem system(base);
    for (const Rational& c : {q(1, 2), q(1), q(3, 2), q(2)}) {
      const auto r = asymptotic_multiplier_ideal(system, c, 64);
      t.expect(r.stabilized && r.crosscheck, describe(base) + " c = " + to_string(c));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 120, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << "8 cases stable and equal by q = 64 in " << std::setprecision(3) << secs << " s";
  return t.done(s.str());
}

Outcome guanli_limit() {
  Tally t;
  const auto g2 = guanli_gradient(2, 40, 0, -40);
  t.expect(std::abs(g2.first - 2) < 1e-6 && std::abs(g2.second) < 1e-6, "M = 2");
  const auto g3 = guanli_gradient(3, 40, 0, -40);
  t.expect(std::abs(g3.first - 1.5) < 1e-6 && std::abs(g3.second) < 1e-6, "M = 3");
  std::ostringstream s;
  s << std::setprecision(10) << "M=2 -> (" << g2.first << ", " << g2.second << "), M=3 -> (" << g3.first << ", "
    << g3.second << ")";
  return t.done(s.str());
}

Outcome oracle_agreement() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::size_t agree = 0, total = 0, members = 0;
  for (const auto& body : {NewtonBody::hyperbola(1, 1, 1), NewtonBody::diagonal(2, 3)}) {
    std::vector<OracleCase> cases;
    while (cases.size() < 50) {
      OracleCase oc{q(std::uniform_int_distribution<long>(1, 60)(rng), 12),
                    {std::uniform_int_distribution<std::int64_t>(0, 4)(rng),
                     std::uniform_int_distribution<std::int64_t>(0, 4)(rng)}};
      const double g = gauge(body, {oc.a.x + 1, oc.a.y + 1}).to_double();
      if (std::abs(g - oc.c.get_d()) >= 0.05 * oc.c.get_d()) cases.push_back(oc);
    }
    const auto rep = agreement_report(body, cases, 0.05, 400, 512, std::max(1u, std::thread::hardware_concurrency()));
    agree += rep.agreements;
    total += rep.cases.size();
    for (const auto& row : rep.cases) members += row.exact_member;
    t.expect(rep.mismatches == 0 && rep.inconclusive == 0,
             describe(body) + ": " + std::to_string(rep.mismatches) + " mismatches, " +
                 std::to_string(rep.inconclusive) + " inconclusive");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 300, "runtime " + std::to_string(secs) + " s");
  return t.done(std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(members) +
                " integrable)");
}

Outcome translation() {
  Tally t;
  using P = std::vector<std::pair<std::int64_t, std::int64_t>>;
  t.expect(translation_search(1, 1, 10) == P{{2, 6}, {3, 3}}, "e=1, c=1, N=10");
  t.expect(translation_search(2, 1, 20) == P{{2, 10}}, "e=2, c=1, N=20");
  return t.done("{(2,6),(3,3)} and {(2,10)}");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ELSV set reproduction", elsv_set},
      {"cluster classifier", cluster_classifier},
      {"mixed sets", mixed_sets},
      {"Minkowski identities", minkowski_identities},
      {"diagonal jump sets", diagonal_sets},
      {"m-multiples property", multiples_property},
      {"gap bound", gap_bound},
      {"Saito fixture", saito_fixture},
      {"Koike periodicity falsification", koike_period},
      {"graded cross-check", graded_crosscheck},
      {"Guan-Li gradient limit", guanli_limit},
      {"oracle agreement", oracle_agreement},
      {"translation search", translation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": " << o.detail << " ["
              << std::fixed << std::setprecision(2) << secs << " s]" << std::defaultfloat << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
