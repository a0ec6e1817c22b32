#include "njump/exact.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

namespace njump {

namespace {

int sgn(const Rational& r) { return sgn(r.get_num()); }

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// sign of R + S*sqrt(D), D >= 0 (not necessarily square-free)
int sign_quad(const Rational& r, const Rational& s, const Integer& d) {
  const int sr = sgn(r);
  const int ss = d == 0 ? 0 : sgn(s);
  if (ss == 0) return sr;
  if (sr == 0 || sr == ss) return ss;
  const Rational diff = r * r - s * s * Rational(d);
  const int sd = sgn(diff);
  if (sd > 0) return sr;
  if (sd < 0) return ss;
  return 0;
}

// sign of r + u*sqrt(d1) + v*sqrt(d2)
int sign_two(const Rational& r, const Rational& u, const Integer& d1, const Rational& v,
             const Integer& d2) {
  const int sx = sign_quad(r, u, d1);
  const int sy = d2 == 0 ? 0 : sgn(v);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // X and Y have opposite signs: compare X^2 with Y^2.
  const Rational rr = r * r + u * u * Rational(d1) - v * v * Rational(d2);
  const int t = sign_quad(rr, 2 * r * u, d1);
  if (t > 0) return sx;
  if (t < 0) return sy;
  return 0;
}

// sign of r + u*sqrt(d1) + v*sqrt(d2) + w*sqrt(d3)
int sign_three(const Rational& r, const Rational& u, const Integer& d1, const Rational& v,
               const Integer& d2, const Rational& w, const Integer& d3) {
  const int sx = sign_quad(r, u, d1);
  const int sy = sign_two(0, v, d2, w, d3);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const Rational rr = r * r + u * u * Rational(d1) - v * v * Rational(d2) - w * w * Rational(d3);
  const int t = sign_two(rr, 2 * r * u, d1, -2 * v * w, Integer(d2 * d3));
  if (t > 0) return sx;
  if (t < 0) return sy;
  return 0;
}

bool rational_square_root(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

void require_same_field(const ExactReal& x, const ExactReal& y) {
  if (!x.is_rational() && !y.is_rational() && x.radicand() != y.radicand()) {
    throw NotQuadratic("arithmetic mixes sqrt(" + x.radicand().get_str() + ") and sqrt(" +
                       y.radicand().get_str() + ")");
  }
}

const Integer& common_radicand(const ExactReal& x, const ExactReal& y) {
  return x.is_rational() ? y.radicand() : x.radicand();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? is_integer_text(body)
                      : is_integer_text(body.substr(0, slash)) && is_integer_text(body.substr(slash + 1));
  if (!ok) throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
  Rational r(std::string(s), 10);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::pair<Integer, Integer> squarefree_decompose(const Integer& n) {
  if (n < 0) throw std::domain_error("squarefree_decompose of a negative integer");
  if (n == 0) return {Integer(0), Integer(1)};
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return {root, Integer(1)};
  }
  Integer rest = n;
  Integer square_part = 1;
  Integer free_part = 1;
  auto strip = [&](unsigned long p) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++count;
    }
    for (unsigned i = 0; i + 1 < count; i += 2) square_part *= p;
    if (count % 2 == 1) free_part *= p;
  };
  strip(2);
  constexpr unsigned long kTrialLimit = 1UL << 20;
  unsigned long p = 3;
  // Once p^3 > rest, rest has at most two prime factors, both >= p.
  for (; p < kTrialLimit && Integer(p) * p * p <= rest; p += 2) strip(p);
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      square_part *= root;
    } else if (Integer(p) * p * p > rest || mpz_probab_prime_p(rest.get_mpz_t(), 40) != 0) {
      free_part *= rest;
    } else {
      throw NotQuadratic("cannot certify the square-free part of " + n.get_str());
    }
  }
  return {square_part, free_part};
}

ExactReal ExactReal::canonicalize(const Rational& a, const Rational& b, const Integer& d) {
  if (d < 0) throw std::domain_error("negative radicand");
  ExactReal out;
  out.a_ = a;
  if (sgn(b) == 0 || d == 0) return out;
  const auto [k, m] = squarefree_decompose(d);
  const Rational coeff = b * Rational(k);
  if (m == 1) {
    out.a_ += coeff;
    return out;
  }
  out.b_ = coeff;
  out.radicand_ = m;
  return out;
}

ExactReal ExactReal::sqrt(const Rational& r) {
  if (sgn(r) < 0) throw std::domain_error("square root of a negative rational");
  const Rational inv_den(Integer(1), r.get_den());
  return canonicalize(0, inv_den, Integer(r.get_num() * r.get_den()));
}

const Rational& ExactReal::as_rational() const {
  if (!is_rational()) throw NotQuadratic("expected a rational, got " + to_string(*this));
  return a_;
}

int ExactReal::sign() const { return sign_quad(a_, b_, radicand_); }

double ExactReal::to_double() const {
  if (is_rational()) return a_.get_d();
  mpf_class root(radicand_, 256);
  root = ::sqrt(root);
  mpf_class v(a_, 256);
  v += mpf_class(b_, 256) * root;
  return v.get_d();
}

ExactReal ExactReal::operator-() const {
  ExactReal out = *this;
  out.a_ = -a_;
  out.b_ = -b_;
  return out;
}

ExactReal ExactReal::in_field(Rational a, Rational b, const Integer& d) {
  ExactReal out;
  out.a_ = std::move(a);
  if (sgn(b) == 0 || d == 0) return out;
  out.b_ = std::move(b);
  out.radicand_ = d;
  return out;
}

ExactReal operator+(const ExactReal& x, const ExactReal& y) {
  require_same_field(x, y);
  return ExactReal::in_field(x.a_ + y.a_, x.b_ + y.b_, common_radicand(x, y));
}

ExactReal operator-(const ExactReal& x, const ExactReal& y) { return x + (-y); }

ExactReal operator*(const ExactReal& x, const ExactReal& y) {
  require_same_field(x, y);
  const Integer& d = common_radicand(x, y);
  const Rational a = x.a_ * y.a_ + x.b_ * y.b_ * Rational(d);
  const Rational b = x.a_ * y.b_ + x.b_ * y.a_;
  return ExactReal::in_field(a, b, d);
}

ExactReal operator/(const ExactReal& x, const ExactReal& y) {
  require_same_field(x, y);
  if (y.sign() == 0) throw std::domain_error("division by zero");
  if (y.is_rational()) {
    return ExactReal::in_field(x.a_ / y.a_, x.b_ / y.a_, x.radicand_);
  }
  const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.radicand_);
  ExactReal conj = y;
  conj.b_ = -conj.b_;
  const ExactReal num = x * conj;
  return ExactReal::in_field(num.a_ / norm, num.b_ / norm, num.radicand_);
}

int sign_of_sum(std::span<const ExactReal> terms) {
  Rational r = 0;
  std::map<Integer, Rational> radicals;
  for (const auto& t : terms) {
    r += t.rational_part();
    if (!t.is_rational()) radicals[t.radicand()] += t.radical_coeff();
  }
  std::vector<std::pair<Integer, Rational>> live;
  for (const auto& [d, c] : radicals)
    if (sgn(c) != 0) live.emplace_back(d, c);
  switch (live.size()) {
    case 0:
      return sgn(r);
    case 1:
      return sign_quad(r, live[0].second, live[0].first);
    case 2:
      return sign_two(r, live[0].second, live[0].first, live[1].second, live[1].first);
    case 3:
      return sign_three(r, live[0].second, live[0].first, live[1].second, live[1].first,
                        live[2].second, live[2].first);
    default:
      throw NotQuadratic("sign of a sum with more than three distinct radicands");
  }
}

Ordering compare(const ExactReal& x, const ExactReal& y) {
  int s = 0;
  if (x.is_rational() && y.is_rational()) {
    s = cmp(x.rational_part(), y.rational_part());
  } else if (y.is_rational() || x.radicand() == y.radicand()) {
    // one field: sign of (a_x - a_y) + (b_x - b_y) sqrt(d)
    const Rational v = y.is_rational() ? x.radical_coeff() : Rational(x.radical_coeff() - y.radical_coeff());
    s = sign_quad(x.rational_part() - y.rational_part(), v, x.radicand());
  } else if (x.is_rational()) {
    s = sign_quad(x.rational_part() - y.rational_part(), -y.radical_coeff(), y.radicand());
  } else {
    // Floating filter: each estimate is within 8 ulp of |a| + |b sqrt(d)|,
    // far below the 1e-13 relative gap required to trust it.
    const auto estimate = [](const ExactReal& v) {
      const double head = v.rational_part().get_d();
      const double tail = v.radical_coeff().get_d() * std::sqrt(v.radicand().get_d());
      return std::pair{head + tail, std::abs(head) + std::abs(tail)};
    };
    const auto [xv, xm] = estimate(x);
    const auto [yv, ym] = estimate(y);
    const double gap = xv - yv;
    if (std::isfinite(xm + ym) && xm + ym > 1e-280 && std::abs(gap) > 1e-13 * (xm + ym)) {
      s = gap < 0 ? -1 : 1;
    } else {
      const ExactReal terms[2] = {x, -y};
      s = sign_of_sum(terms);
    }
  }
  if (s < 0) return Ordering::less;
  if (s > 0) return Ordering::greater;
  return Ordering::equal;
}

std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y) {
  switch (compare(x, y)) {
    case Ordering::less:
      return std::strong_ordering::less;
    case Ordering::greater:
      return std::strong_ordering::greater;
    default:
      return std::strong_ordering::equal;
  }
}

std::optional<ExactReal> try_sqrt(const ExactReal& x) {
  if (x.sign() < 0) throw std::domain_error("square root of a negative number");
  if (x.is_rational()) return ExactReal::sqrt(x.rational_part());
  // Look for u + v*sqrt(d) with u^2 + d v^2 = A and 2uv = B.
  const Rational& a = x.rational_part();
  const Rational& b = x.radical_coeff();
  const Integer& d = x.radicand();
  Rational n;
  if (!rational_square_root(a * a - b * b * Rational(d), n)) return std::nullopt;
  for (const Rational& t : {Rational((a + n) / 2), Rational((a - n) / 2)}) {
    Rational u;
    if (sgn(t) <= 0 || !rational_square_root(t, u)) continue;
    const Rational v = b / (2 * u);
    ExactReal root = ExactReal::canonicalize(u, v, d);
    if (root.sign() < 0) root = -root;
    if (root * root == x) return root;
  }
  return std::nullopt;
}

ExactReal sqrt_exact(const ExactReal& x) {
  auto r = try_sqrt(x);
  if (!r) throw NotQuadratic("square root of " + to_string(x) + " is not a quadratic irrational");
  return *r;
}

Integer floor(const ExactReal& x) {
  if (x.is_rational()) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.rational_part().get_num_mpz_t(), x.rational_part().get_den_mpz_t());
    return q;
  }
  mpf_class root(x.radicand(), 512);
  root = ::sqrt(root);
  mpf_class approx(x.rational_part(), 512);
  approx += mpf_class(x.radical_coeff(), 512) * root;
  approx = ::floor(approx);
  Integer guess(approx);
  while (compare(ExactReal(Rational(guess)), x) == Ordering::greater) --guess;
  while (compare(ExactReal(Rational(guess + 1)), x) != Ordering::greater) ++guess;
  return guess;
}

Integer ceil(const ExactReal& x) {
  Integer f = floor(x);
  if (compare(ExactReal(Rational(f)), x) == Ordering::equal) return f;
  return f + 1;
}

ExactReal min(const ExactReal& x, const ExactReal& y) { return compare(y, x) == Ordering::less ? y : x; }
ExactReal max(const ExactReal& x, const ExactReal& y) { return compare(y, x) == Ordering::greater ? y : x; }

std::string to_string(const ExactReal& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  const Rational& b = x.radical_coeff();
  const std::string root = "sqrt(" + x.radicand().get_str() + ")";
  const Rational mag = abs(b);
  const std::string term = mag == 1 ? root : to_string(mag) + "*" + root;
  if (sgn(x.rational_part()) == 0) return (sgn(b) < 0 ? "-" : "") + term;
  return to_string(x.rational_part()) + (sgn(b) < 0 ? " - " : " + ") + term;
}

ExactReal parse_exact(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  const auto pos = compact.find("sqrt(");
  if (pos == std::string::npos) return ExactReal(parse_rational(compact));
  const auto error = [&] { return std::invalid_argument("invalid exact number '" + std::string(text) + "'"); };
  if (compact.back() != ')') throw error();
  const std::string radicand_text = compact.substr(pos + 5, compact.size() - pos - 6);
  if (!is_integer_text(radicand_text)) throw error();
  const Integer d(radicand_text, 10);

  std::string prefix = compact.substr(0, pos);
  Rational a = 0;
  Rational b = 1;
  const bool has_coeff = !prefix.empty() && prefix.back() == '*';
  if (has_coeff) prefix.pop_back();
  // The only sign not at position 0 separates the rational part from the coefficient.
  std::size_t split = std::string::npos;
  for (std::size_t i = prefix.size(); i-- > 1;) {
    if (prefix[i] == '+' || prefix[i] == '-') {
      split = i;
      break;
    }
  }
  std::string coeff_text;
  if (split != std::string::npos) {
    a = parse_rational(prefix.substr(0, split));
    coeff_text = prefix.substr(split);
  } else {
    coeff_text = prefix;
  }
  bool negative = false;
  if (!coeff_text.empty() && (coeff_text.front() == '+' || coeff_text.front() == '-')) {
    negative = coeff_text.front() == '-';
    coeff_text.erase(0, 1);
  }
  if (has_coeff) {
    if (coeff_text.empty() || coeff_text.front() == '-') throw error();
    b = parse_rational(coeff_text);
  } else if (!coeff_text.empty()) {
    throw error();
  }
  if (negative) b = -b;
  return ExactReal::canonicalize(a, b, d);
}

}  // namespace njump
