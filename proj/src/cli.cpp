#include "njump/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "njump/body_spec.hpp"
#include "njump/graded.hpp"
#include "njump/jumping.hpp"
#include "njump/oracle.hpp"

namespace njump::cli {

namespace {

// Invalid flag values; reported as usage errors.
class FlagError : public std::invalid_argument {
 public:
  FlagError(const std::string& flag, const std::string& message) : std::invalid_argument(flag + ": " + message) {}
};

Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw FlagError(flag, "invalid rational '" + text + "'");
  }
}

std::vector<Rational> flag_rational_list(const std::string& flag, const std::string& text) {
  std::vector<Rational> values;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) values.push_back(flag_rational(flag, item));
  if (values.empty()) throw FlagError(flag, "empty list");
  return values;
}

std::string approx(const ExactReal& x) {
  std::ostringstream out;
  out << std::setprecision(12) << x.to_double();
  return out.str();
}

std::string join(const std::vector<ExactReal>& values) {
  std::string text;
  for (const auto& v : values) text += (text.empty() ? "" : ", ") + to_string(v);
  return text.empty() ? "(none)" : text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct Row {
  std::string value, approx, p, q, kind, upper, upper_approx;
};

std::vector<Row> report_rows(const JumpReport& report) {
  std::vector<Row> rows;
  for (const auto& e : report.entries) {
    Row row{to_string(e.value), approx(e.value), "", "", "jump", "", ""};
    if (e.witness) {
      row.p = std::to_string(e.witness->x);
      row.q = std::to_string(e.witness->y);
    }
    if (e.cluster) row.kind = "cluster";
    if (!e.exact) row.kind = "approx_jump";
    rows.push_back(std::move(row));
  }
  for (const auto& r : report.residuals) {
    rows.push_back({to_string(r.lo), approx(r.lo), "", "", r.hi_inclusive ? "residual_closed" : "residual_open",
                    to_string(r.hi), approx(r.hi)});
  }
  return rows;
}

void print_report(const JumpReport& report, const std::string& format, std::ostream& out) {
  const auto rows = report_rows(report);
  if (format == "csv") {
    out << "value,approx,p,q,kind,upper,upper_approx\n";
    for (const auto& r : rows)
      out << r.value << ',' << r.approx << ',' << r.p << ',' << r.q << ',' << r.kind << ',' << r.upper << ','
          << r.upper_approx << '\n';
    return;
  }
  std::vector<std::vector<std::string>> cells{{"value", "approx", "witness", "kind"}};
  for (const auto& r : rows) {
    const std::string witness = r.p.empty() ? "" : "(" + r.p + ", " + r.q + ")";
    const std::string value = r.upper.empty() ? r.value
                                              : "(" + r.value + ", " + r.upper +
                                                    (r.kind == "residual_closed" ? "]" : ")");
    const std::string shown = r.upper.empty() ? r.approx : r.approx + " .. " + r.upper_approx;
    cells.push_back({value, shown, witness, r.kind});
  }
  std::vector<std::size_t> width(4, 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t i = 0; i < 4; ++i) text += line[i] + std::string(width[i] - line[i].size() + 2, ' ');
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << '\n';
  }
  out << "clusters: " << join(report.clusters) << '\n';
}

void print_period(const PeriodReport& report, std::ostream& out) {
  out << "period " << to_string(report.period) << ", " << report.probes << " probes per alpha\n";
  for (const auto& e : report.per_alpha) {
    out << "alpha " << to_string(e.alpha) << " (" << approx(e.alpha) << "): " << e.misses.size() << "/"
        << report.probes << " miss";
    if (!e.misses.empty()) {
      out << " at m =";
      for (auto m : e.misses) out << ' ' << m;
    }
    out << '\n';
  }
  if (!report.per_alpha.empty()) out << "best alpha: " << to_string(report.per_alpha[report.best].alpha) << '\n';
  out << (report.falsified ? "falsified" : "not falsified") << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact jumping numbers and multiplier ideals of toric weights in dimension 2", "njump"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for the inner loops")->check(CLI::PositiveNumber);

  std::string body_file, phi_file, psi_file, cases_file, c_text, bound_text, period_text, set_name, m_text;
  std::string format = "table";
  std::int64_t window = 0, qmax = 0, xcap = 8, probes = 0, e = 0, c_int = 0, n = 0, grid = 512;
  std::optional<std::int64_t> koike_a, set_window;
  double margin = 0, tmax = 0;
  bool normalize = false;

  auto* body = app.add_subcommand("body", "parse a body spec and print it");
  body->add_option("--in", body_file, "body spec JSON")->required();
  body->add_flag("--normalize", normalize, "print the canonical JSON form");

  auto* mi = app.add_subcommand("mi", "multiplier ideal J(c B)");
  mi->add_option("--body", body_file)->required();
  mi->add_option("--c", c_text)->required();

  auto* jump = app.add_subcommand("jump", "jumping numbers up to a bound");
  jump->add_option("--body", body_file)->required();
  jump->add_option("--bound", bound_text)->required();
  jump->add_option("--window", window)->required()->check(CLI::PositiveNumber);
  jump->add_option("--format", format)->check(CLI::IsMember({"csv", "table"}));

  auto* clusters = app.add_subcommand("clusters", "cluster points up to a bound");
  clusters->add_option("--body", body_file)->required();
  clusters->add_option("--bound", bound_text)->required();

  auto* mixed = app.add_subcommand("mixed", "jumping numbers of c phi + psi");
  mixed->add_option("--phi", phi_file)->required();
  mixed->add_option("--psi", psi_file)->required();
  mixed->add_option("--bound", bound_text)->required();
  mixed->add_option("--window", window)->required()->check(CLI::PositiveNumber);
  mixed->add_option("--format", format)->check(CLI::IsMember({"csv", "table"}));

  auto* lct_cmd = app.add_subcommand("lct", "log canonical threshold");
  lct_cmd->add_option("--body", body_file)->required();

  auto* graded = app.add_subcommand("graded", "asymptotic multiplier ideal of the inner graded system");
  graded->add_option("--body", body_file)->required();
  graded->add_option("--c", c_text)->required();
  graded->add_option("--qmax", qmax)->required()->check(CLI::PositiveNumber);
  graded->add_option("--xcap", xcap)->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "numerical integrability cross-check");
  oracle->add_option("--body", body_file)->required();
  oracle->add_option("--cases", cases_file, "CSV lines c,a1,a2")->required();
  oracle->add_option("--margin", margin)->required()->check(CLI::PositiveNumber);
  oracle->add_option("--tmax", tmax)->required()->check(CLI::Range(10.0, 1e6));
  oracle->add_option("--grid", grid)->check(CLI::Range(std::int64_t{64}, std::int64_t{8192}));

  auto* period = app.add_subcommand("period", "try to falsify a period of a built-in jump set");
  period->add_option("--set", set_name)->required()->check(CLI::IsMember({"koike", "saito", "elsv", "diagonal"}));
  auto* a_opt = period->add_option("--a", koike_a, "Koike parameter");
  auto* m_opt = period->add_option("--m", m_text, "diagonal exponents, comma separated");
  a_opt->excludes(m_opt);
  period->add_option("--bound", bound_text)->required();
  period->add_option("--period", period_text)->required();
  period->add_option("--probes", probes)->required()->check(CLI::PositiveNumber);
  period->add_option("--window", set_window, "enumeration window for elsv")->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "pairs r <= s <= n with rs/(r+s) = e/(e+1) + c");
  search->add_option("--e", e)->required()->check(CLI::PositiveNumber);
  search->add_option("--c", c_int)->required()->check(CLI::NonNegativeNumber);
  search->add_option("--n", n)->required()->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (body->parsed()) {
      const NewtonBody b = load_body_spec(body_file);
      if (normalize) {
        out << canonical_json(b).dump(2) << '\n';
      } else {
        out << describe(b);
      }
    } else if (mi->parsed()) {
      const Rational c = flag_rational("--c", c_text);
      if (sgn(c) <= 0) throw FlagError("--c", "must be positive");
      out << to_string(multiplier_ideal(load_body_spec(body_file), ExactReal(c))) << '\n';
    } else if (jump->parsed()) {
      const Rational bound = flag_rational("--bound", bound_text);
      print_report(enumerate_jumping(load_body_spec(body_file), bound, window, jobs), format, out);
    } else if (clusters->parsed()) {
      const Rational bound = flag_rational("--bound", bound_text);
      out << join(cluster_points(load_body_spec(body_file), bound)) << '\n';
    } else if (mixed->parsed()) {
      const Rational bound = flag_rational("--bound", bound_text);
      const NewtonBody phi = load_body_spec(phi_file);
      const NewtonBody psi = load_body_spec(psi_file);
      print_report(enumerate_mixed(phi, psi, bound, window, jobs), format, out);
    } else if (lct_cmd->parsed()) {
      out << to_string(lct(load_body_spec(body_file))) << '\n';
    } else if (graded->parsed()) {
      const Rational c = flag_rational("--c", c_text);
      if (sgn(c) <= 0) throw FlagError("--c", "must be positive");
      const GradedSystem system(load_body_spec(body_file), xcap);
      const auto r = asymptotic_multiplier_ideal(system, c, qmax);
      for (const auto& step : r.steps) {
        out << "q = " << step.q << ": " << to_string(step.ideal);
        if (step.contained_in_next) out << (*step.contained_in_next ? "  (in next)" : "  (NOT in next)");
        out << '\n';
      }
      out << "asymptotic: " << to_string(r.ideal) << '\n';
      out << "stabilized: " << (r.stabilized ? "yes, from q = " + std::to_string(*r.stable_from) : "no") << '\n';
      out << "howald: " << to_string(multiplier_ideal(system.base(), ExactReal(c))) << '\n';
      out << "crosscheck: " << (r.crosscheck ? "pass" : "fail") << '\n';
    } else if (oracle->parsed()) {
      const NewtonBody b = load_body_spec(body_file);
      const auto cases = parse_oracle_cases(read_file(cases_file));
      const auto report = agreement_report(b, cases, margin, tmax, grid, jobs);
      out << report.csv();
      err << "agreement " << report.agreements << "/" << report.cases.size() << ", mismatches "
          << report.mismatches << ", inconclusive " << report.inconclusive << '\n';
    } else if (period->parsed()) {
      const Rational bound = flag_rational("--bound", bound_text);
      const Rational p = flag_rational("--period", period_text);
      JumpSetParams params;
      params.a = koike_a;
      params.window = set_window;
      if (!m_text.empty()) params.m = flag_rational_list("--m", m_text);
      print_period(period_falsify(builtin_jump_set(set_name, params, bound), p, probes), out);
    } else if (search->parsed()) {
      std::string text;
      for (const auto& [r, s] : translation_search(e, c_int, n))
        text += (text.empty() ? "" : ", ") + std::string("(") + std::to_string(r) + ", " + std::to_string(s) + ")";
      out << (text.empty() ? "(none)" : text) << '\n';
    }
  } catch (const FlagError& ex) {
    err << "error: " << ex.what() << '\n';
    return usage_error;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return domain_error;
  }
  return ok;
}

}  // namespace njump::cli
