#include "njump/monomial_ideal.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

namespace njump {

MonomialIdeal MonomialIdeal::from_generators(std::vector<LatticePoint> exponents) {
  if (exponents.empty()) throw std::invalid_argument("the zero ideal is not representable");
  for (const auto& e : exponents)
    if (e.x < 0 || e.y < 0) throw std::invalid_argument("negative exponent");
  std::sort(exponents.begin(), exponents.end());
  MonomialIdeal ideal;
  for (const auto& e : exponents)
    if (ideal.gens_.empty() || e.y < ideal.gens_.back().y) ideal.gens_.push_back(e);
  return ideal;
}

bool MonomialIdeal::contains(LatticePoint m) const {
  // last generator with x <= m.x has the smallest y among those
  auto it = std::upper_bound(gens_.begin(), gens_.end(), m.x,
                             [](std::int64_t x, const LatticePoint& g) { return x < g.x; });
  if (it == gens_.begin()) return false;
  return std::prev(it)->y <= m.y;
}

namespace {

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("lattice coordinate out of 64-bit range");
  return v.get_si();
}

// Smallest Y >= 0 with (X, Y) in the body, or nullopt when the column misses it.
class ColumnMinimum {
 public:
  ColumnMinimum(const NewtonBody& body, bool strict) : body_(body), strict_(strict) {}

  std::optional<std::int64_t> operator()(std::int64_t x) const {
    const ExactReal ex(x);
    const auto& asym = body_.asymptotes();
    if (ex < asym.x0) return std::nullopt;
    if (ex == asym.x0 && (strict_ || !asym.attained_x)) return std::nullopt;
    const ExactReal f = body_.boundary_at(ex);
    const Integer y = strict_ ? floor(f) + 1 : ceil(f);
    return std::max<std::int64_t>(0, to_int64(y));
  }

 private:
  const NewtonBody& body_;
  bool strict_;
};

}  // namespace

MonomialIdeal lattice_staircase(const NewtonBody& body, bool strict, std::size_t max_generators) {
  const auto& asym = body.asymptotes();
  const ColumnMinimum column(body, strict);
  // limit row: smallest Y reached far to the right
  const Integer lim = (strict || !asym.attained_y) ? floor(asym.y0) + 1 : ceil(asym.y0);
  const std::int64_t limit = std::max<std::int64_t>(0, to_int64(lim));
  std::int64_t x = std::max<std::int64_t>(0, to_int64(floor(asym.x0)));
  if (!column(x)) ++x;
  std::vector<LatticePoint> gens;
  while (true) {
    const std::int64_t y = *column(x);
    gens.push_back({x, y});
    if (gens.size() > max_generators) throw std::runtime_error("staircase exceeds the generator limit");
    if (y <= limit) break;
    // gallop to the last column with the same minimum
    std::int64_t lo = x;
    std::int64_t step = 1;
    std::int64_t hi = x + 1;
    while (*column(hi) == y) {
      lo = hi;
      if (step > std::numeric_limits<std::int64_t>::max() / 4) throw std::overflow_error("staircase scan overflow");
      step *= 2;
      hi = x + step;
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (*column(mid) == y) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    x = hi;
  }
  return MonomialIdeal::from_generators(std::move(gens));
}

MonomialIdeal multiplier_ideal(const NewtonBody& body, const ExactReal& c) {
  if (c.sign() <= 0) throw std::invalid_argument("multiplier_ideal needs c > 0");
  // interior lattice points have both coordinates >= 1
  const MonomialIdeal inner = lattice_staircase(scale(body, c), true);
  std::vector<LatticePoint> shifted;
  shifted.reserve(inner.generators().size());
  for (const auto& g : inner.generators()) shifted.push_back({g.x - 1, g.y - 1});
  return MonomialIdeal::from_generators(std::move(shifted));
}

NewtonBody newton_polyhedron(const MonomialIdeal& ideal) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& g : ideal.generators()) pts.emplace_back(Rational(g.x), Rational(g.y));
  return NewtonBody::polyhedral(pts);
}

bool ideal_contains_ideal(const MonomialIdeal& i, const MonomialIdeal& j) {
  return std::all_of(j.generators().begin(), j.generators().end(), [&](const auto& g) { return i.contains(g); });
}

MonomialIdeal ideal_product(const MonomialIdeal& i, const MonomialIdeal& j) {
  std::vector<LatticePoint> sums;
  sums.reserve(i.generators().size() * j.generators().size());
  for (const auto& g : i.generators())
    for (const auto& h : j.generators()) sums.push_back({g.x + h.x, g.y + h.y});
  return MonomialIdeal::from_generators(std::move(sums));
}

std::string monomial_string(LatticePoint e) {
  if (e.x == 0 && e.y == 0) return "1";
  const auto power = [](const char* var, std::int64_t k) {
    return k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k);
  };
  std::string out;
  if (e.x > 0) out = power("x", e.x);
  if (e.y > 0) out += (out.empty() ? "" : "*") + power("y", e.y);
  return out;
}

std::string to_string(const MonomialIdeal& ideal) {
  std::string out;
  for (const auto& g : ideal.generators()) {
    if (!out.empty()) out += ", ";
    out += monomial_string(g);
  }
  return out;
}

std::string to_csv(const MonomialIdeal& ideal) {
  std::ostringstream out;
  out << "a,b\n";
  for (const auto& g : ideal.generators()) out << g.x << ',' << g.y << '\n';
  return out.str();
}

}  // namespace njump
