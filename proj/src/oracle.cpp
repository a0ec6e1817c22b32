#include "njump/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace njump {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

void require_nonpositive(double s1, double s2) {
  if (!(s1 <= 0) || !(s2 <= 0)) throw std::invalid_argument("weights are evaluated at s <= 0");
}

void require_guanli(std::int64_t M, std::int64_t K) {
  if (M < 2) throw std::invalid_argument("GuanLi needs M >= 2");
  if (K < 1) throw std::invalid_argument("GuanLi needs K >= 1");
}

// Exponent of the k-th term, b_k s2 - b_k log k. b_k may overflow to inf;
// the factor (s2 - log k) is zero only for k = 1, s2 = 0.
double guanli_exponent(double bk, std::int64_t k, double s2) {
  const double f = s2 - std::log(static_cast<double>(k));
  return f == 0 ? 0.0 : bk * f;
}

double guanli_value(std::int64_t M, std::int64_t K, double s1, double s2) {
  double total = s1;
  const double m = static_cast<double>(M);
  double mk = 1;
  for (std::int64_t k = 1; k <= K; ++k) {
    mk *= m;
    total += log_add(s1, guanli_exponent(mk * mk, k, s2)) / mk;
  }
  return total;
}

}  // namespace

std::function<double(double, double)> weight_evaluator(const WeightFn& w) {
  return std::visit(
      [](const auto& fn) -> std::function<double(double, double)> {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, SupportOf>) {
          if (fn.body.is_quadrant()) return [](double s1, double s2) { require_nonpositive(s1, s2); return 0.0; };
          return [eval = SupportEvaluator(fn.body)](double s1, double s2) {
            require_nonpositive(s1, s2);
            return s1 == 0 && s2 == 0 ? 0.0 : eval(s1, s2);
          };
        } else if constexpr (std::is_same_v<T, GuanLi>) {
          require_guanli(fn.M, fn.K);
          return [M = fn.M, K = fn.K](double s1, double s2) {
            require_nonpositive(s1, s2);
            return guanli_value(M, K, s1, s2);
          };
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          if (!(fn.m1 > 0) || !(fn.m2 > 0)) throw std::invalid_argument("Diagonal needs positive exponents");
          return [m1 = fn.m1, m2 = fn.m2](double s1, double s2) {
            require_nonpositive(s1, s2);
            return log_add(m1 * s1, m2 * s2);
          };
        } else {
          std::vector<std::pair<double, double>> gens;
          for (const auto& g : fn.ideal.generators()) gens.emplace_back(double(g.x), double(g.y));
          return [gens = std::move(gens)](double s1, double s2) {
            require_nonpositive(s1, s2);
            double acc = kNegInf;
            for (const auto& [x, y] : gens) acc = log_add(acc, x * s1 + y * s2);
            return acc;
          };
        }
      },
      w);
}

double weight_eval(const WeightFn& w, double s1, double s2) { return weight_evaluator(w)(s1, s2); }

std::pair<double, double> guanli_gradient(std::int64_t M, std::int64_t K, double s1, double s2) {
  require_guanli(M, K);
  const double m = static_cast<double>(M);
  double d1 = 1;
  double d2 = 0;
  double mk = 1;
  for (std::int64_t k = 1; k <= K; ++k) {
    mk *= m;
    const double lk = guanli_exponent(mk * mk, k, s2);
    d1 += sigmoid(s1 - lk) / mk;
    d2 += mk * sigmoid(lk - s1);
  }
  return {d1, d2};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent:
      return "Convergent";
    case Verdict::divergent:
      return "Divergent";
    case Verdict::inconclusive:
      break;
  }
  return "Inconclusive";
}

ProbeResult integrability_probe(const WeightFn& w, double c, LatticePoint a, double tmax, std::int64_t grid,
                                const ProbeOptions& options) {
  if (!(c > 0)) throw std::invalid_argument("probe needs c > 0");
  if (!(tmax >= 10)) throw std::invalid_argument("probe needs Tmax >= 10");
  if (grid < 64) throw std::invalid_argument("probe needs grid >= 64");
  if (a.x < 0 || a.y < 0) throw std::invalid_argument("exponent must be non-negative");
  const std::int64_t n = (grid + 3) / 4 * 4;
  const double h = tmax / static_cast<double>(n);
  const auto phi = weight_evaluator(w);
  const double e1 = 2.0 * static_cast<double>(a.x + 1);
  const double e2 = 2.0 * static_cast<double>(a.y + 1);

  // log of the integrand at node (i, j), s = (-i h, -j h)
  const std::size_t side = static_cast<std::size_t>(n + 1);
  std::vector<double> logf(side * side);
  for (std::size_t i = 0; i < side; ++i) {
    const double s1 = -static_cast<double>(i) * h;
    for (std::size_t j = 0; j < side; ++j) {
      const double s2 = -static_cast<double>(j) * h;
      logf[i * side + j] = e1 * s1 + e2 * s2 - 2.0 * c * phi(s1, s2);
    }
  }

  ProbeResult result;
  for (int quarter = 1; quarter <= 4; ++quarter) {
    const std::size_t m = static_cast<std::size_t>(n / 4 * quarter);
    const auto log_weight = [&](std::size_t i) { return (i == 0 || i == m) ? std::log(0.5) : 0.0; };
    double peak = kNegInf;
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t j = 0; j <= m; ++j) peak = std::max(peak, logf[i * side + j]);
    double sum = 0;
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t j = 0; j <= m; ++j)
        sum += std::exp(logf[i * side + j] - peak + log_weight(i) + log_weight(j));
    const double t = h * static_cast<double>(m);
    result.samples.emplace_back(t, peak + std::log(sum) + 2.0 * std::log(h));
  }

  double mt = 0, ml = 0;
  for (const auto& [t, l] : result.samples) {
    mt += t / 4;
    ml += l / 4;
  }
  double num = 0, den = 0;
  for (const auto& [t, l] : result.samples) {
    num += (t - mt) * (l - ml);
    den += (t - mt) * (t - mt);
  }
  result.slope = num / den;

  const double last_increment = -std::expm1(result.samples[2].second - result.samples[3].second);
  if (result.slope > options.slope_threshold) {
    result.verdict = Verdict::divergent;
  } else if (std::abs(last_increment) < options.increment_tol) {
    result.verdict = Verdict::convergent;
  }
  return result;
}

std::string AgreementReport::csv() const {
  std::ostringstream out;
  out << "id,c,a1,a2,exact_member,probe_verdict,slope,agree\n";
  for (const auto& row : cases) {
    out << row.id << ',' << to_string(row.input.c) << ',' << row.input.a.x << ',' << row.input.a.y << ','
        << (row.exact_member ? "true" : "false") << ',' << to_string(row.probe.verdict) << ','
        << std::setprecision(6) << row.probe.slope << ',' << (row.agree ? "true" : "false") << '\n';
  }
  return out.str();
}

AgreementReport agreement_report(const NewtonBody& body, const std::vector<OracleCase>& cases, double margin,
                                 double tmax, std::int64_t grid, unsigned jobs) {
  if (!(margin > 0)) throw std::invalid_argument("margin must be positive");
  AgreementReport report;
  report.cases.resize(cases.size());
  std::vector<std::size_t> violations;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& input = cases[i];
    if (sgn(input.c) <= 0) throw std::invalid_argument("case " + std::to_string(i) + ": c must be positive");
    if (input.a.x < 0 || input.a.y < 0)
      throw std::invalid_argument("case " + std::to_string(i) + ": exponent must be non-negative");
    auto& row = report.cases[i];
    row.id = i;
    row.input = input;
    row.gauge = gauge(body, {input.a.x + 1, input.a.y + 1}).to_double();
    const double c = input.c.get_d();
    if (std::abs(row.gauge - c) < margin * c) violations.push_back(i);
  }
  if (!violations.empty()) {
    std::string list;
    for (auto i : violations) list += (list.empty() ? "" : ", ") + std::to_string(i);
    throw MarginViolation("cases within the margin of the threshold: " + list, violations);
  }

  const WeightFn weight = SupportOf{body};
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      auto& row = report.cases[i];
      row.exact_member = multiplier_ideal(body, ExactReal(row.input.c)).contains(row.input.a);
      row.probe = integrability_probe(weight, row.input.c.get_d(), row.input.a, tmax, grid);
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  for (auto& row : report.cases) {
    if (row.probe.verdict == Verdict::inconclusive) {
      ++report.inconclusive;
      continue;
    }
    row.agree = row.exact_member == (row.probe.verdict == Verdict::convergent);
    ++(row.agree ? report.agreements : report.mismatches);
  }
  return report;
}

std::vector<OracleCase> parse_oracle_cases(const std::string& text) {
  std::vector<OracleCase> cases;
  std::istringstream in(text);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }),
               line.end());
    if (line.empty() || (cases.empty() && line[0] == 'c')) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(cell);
    const std::string where = "cases line " + std::to_string(lineno);
    if (fields.size() != 3) throw std::invalid_argument(where + ": expected c,a1,a2");
    try {
      OracleCase oc{parse_rational(fields[0]), {std::stoll(fields[1]), std::stoll(fields[2])}};
      cases.push_back(std::move(oc));
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return cases;
}

}  // namespace njump
