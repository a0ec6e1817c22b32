#include "njump/newton_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "boundary_chain.hpp"

namespace njump {

namespace {

const ExactReal kZero{0L};

bool is_segment(const BoundaryPiece& p) { return std::holds_alternative<Segment>(p); }

ExactReal arc_value(const Arc& arc, const ExactReal& x) { return arc.b + arc.s / (x - arc.a); }

ExactReal arc_slope(const Arc& arc, const ExactReal& x) {
  const ExactReal dx = x - arc.a;
  return -arc.s / (dx * dx);
}

ExactReal segment_slope(const Segment& seg) {
  return (seg.end.y - seg.start.y) / (seg.end.x - seg.start.x);
}

const ExactReal& piece_start_x(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->start.x;
  return std::get<Arc>(p).xlo;
}

std::optional<ExactReal> piece_end_x(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->end.x;
  return std::get<Arc>(p).xhi;
}

bool leading_arc(const BoundaryPiece& p) {
  const auto* arc = std::get_if<Arc>(&p);
  return arc != nullptr && arc->xlo == arc->a;
}

// Point at the start of the piece; must not be a leading arc.
Point piece_start(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->start;
  const auto& arc = std::get<Arc>(p);
  return {arc.xlo, arc_value(arc, arc.xlo)};
}

// Point at the end of the piece; must not be an unbounded arc.
Point piece_end(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->end;
  const auto& arc = std::get<Arc>(p);
  return {*arc.xhi, arc_value(arc, *arc.xhi)};
}

ExactReal piece_start_slope(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return segment_slope(*s);
  const auto& arc = std::get<Arc>(p);
  return arc_slope(arc, arc.xlo);
}

ExactReal piece_end_slope(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return segment_slope(*s);
  const auto& arc = std::get<Arc>(p);
  return arc.xhi ? arc_slope(arc, *arc.xhi) : kZero;
}

[[noreturn]] void invalid(const std::string& what) {
  throw std::invalid_argument("invalid Newton body: " + what);
}

std::vector<BoundaryPiece> merge_adjacent(std::vector<BoundaryPiece> pieces) {
  std::vector<BoundaryPiece> out;
  for (auto& piece : pieces) {
    if (auto* seg = std::get_if<Segment>(&piece)) {
      if (seg->start == seg->end) continue;
    } else {
      const auto& arc = std::get<Arc>(piece);
      if (arc.xhi && *arc.xhi == arc.xlo) continue;
    }
    if (!out.empty()) {
      auto& prev = out.back();
      if (is_segment(prev) && is_segment(piece)) {
        auto& a = std::get<Segment>(prev);
        const auto& b = std::get<Segment>(piece);
        if (a.end == b.start && segment_slope(a) == segment_slope(b)) {
          a.end = b.end;
          continue;
        }
      } else if (!is_segment(prev) && !is_segment(piece)) {
        auto& a = std::get<Arc>(prev);
        const auto& b = std::get<Arc>(piece);
        if (a.a == b.a && a.b == b.b && a.s == b.s && a.xhi && *a.xhi == b.xlo) {
          a.xhi = b.xhi;
          continue;
        }
      }
    }
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace

NewtonBody NewtonBody::from_pieces(std::vector<BoundaryPiece> pieces, Asymptotes asym) {
  if (asym.x0.sign() < 0 || asym.y0.sign() < 0) invalid("negative asymptote");
  pieces = merge_adjacent(std::move(pieces));
  if (pieces.empty()) {
    if (!asym.attained_x || !asym.attained_y) invalid("a corner body must attain both asymptotes");
  } else {
    const auto& first = pieces.front();
    if (leading_arc(first)) {
      if (asym.attained_x) invalid("leading arc contradicts an attained vertical asymptote");
      if (std::get<Arc>(first).a != asym.x0) invalid("leading arc asymptote differs from x0");
    } else {
      if (!asym.attained_x) invalid("bounded first piece needs an attained vertical asymptote");
      if (piece_start_x(first) != asym.x0) invalid("first piece does not start at x0");
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& piece = pieces[i];
      if (const auto* seg = std::get_if<Segment>(&piece)) {
        if (!(seg->start.x < seg->end.x) || !(seg->end.y < seg->start.y))
          invalid("segment slope must be strictly negative");
      } else {
        const auto& arc = std::get<Arc>(piece);
        if (arc.s.sign() <= 0) invalid("arc with nonpositive s");
        if (arc.xlo < arc.a || (i > 0 && arc.xlo == arc.a)) invalid("arc starts left of its asymptote");
        if (arc.xhi && !(arc.xlo < *arc.xhi)) invalid("empty arc range");
        if (!arc.xhi && i + 1 != pieces.size()) invalid("unbounded arc must be last");
      }
      if (i + 1 < pieces.size()) {
        const auto& next = pieces[i + 1];
        const auto end_x = piece_end_x(piece);
        if (!end_x || *end_x != piece_start_x(next)) invalid("pieces are not contiguous in x");
        if (leading_arc(next)) invalid("leading arc in the middle of the boundary");
        if (piece_end(piece).y != piece_start(next).y) invalid("boundary is discontinuous");
        if (piece_start_slope(next) < piece_end_slope(piece)) invalid("boundary is not convex");
      }
    }
    const auto& last = pieces.back();
    if (!piece_end_x(last)) {
      if (asym.attained_y) invalid("unbounded arc contradicts an attained horizontal asymptote");
      if (std::get<Arc>(last).b != asym.y0) invalid("last arc asymptote differs from y0");
    } else {
      if (!asym.attained_y) invalid("bounded last piece needs an attained horizontal asymptote");
      if (piece_end(last).y != asym.y0) invalid("last piece does not end at y0");
    }
  }
  NewtonBody body;
  body.pieces_ = std::move(pieces);
  body.asymptotes_ = std::move(asym);
  return body;
}

NewtonBody NewtonBody::polyhedral(const std::vector<std::pair<Rational, Rational>>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("polyhedral body needs at least one vertex");
  std::vector<std::pair<Rational, Rational>> pts = vertices;
  for (const auto& [x, y] : pts)
    if (sgn(x) < 0 || sgn(y) < 0) throw std::invalid_argument("polyhedral vertex with negative coordinate");
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<Rational, Rational>> pareto;
  for (const auto& p : pts)
    if (pareto.empty() || p.second < pareto.back().second) pareto.push_back(p);
  std::vector<std::pair<Rational, Rational>> hull;
  const auto cross = [](const auto& o, const auto& a, const auto& b) -> Rational {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  for (const auto& p : pareto) {
    while (hull.size() >= 2 && sgn(cross(hull[hull.size() - 2], hull.back(), p)) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    pieces.emplace_back(Segment{{hull[i].first, hull[i].second}, {hull[i + 1].first, hull[i + 1].second}});
  }
  return from_pieces(std::move(pieces), {hull.front().first, hull.back().second, true, true});
}

NewtonBody NewtonBody::hyperbola(const Rational& a, const Rational& b, const Rational& s) {
  if (sgn(a) < 0 || sgn(b) < 0) throw std::invalid_argument("hyperbola needs a, b >= 0");
  if (sgn(s) <= 0) throw std::invalid_argument("hyperbola needs s > 0");
  return from_pieces({Arc{a, b, s, a, std::nullopt}}, {a, b, false, false});
}

NewtonBody NewtonBody::diagonal(const Rational& m1, const Rational& m2) {
  if (sgn(m1) <= 0 || sgn(m2) <= 0) throw std::invalid_argument("diagonal body needs m1, m2 > 0");
  return polyhedral({{m1, Rational(0)}, {Rational(0), m2}});
}

Point NewtonBody::start_point() const {
  if (!asymptotes_.attained_x) throw std::logic_error("start_point of a body with open vertical asymptote");
  if (pieces_.empty()) return {asymptotes_.x0, asymptotes_.y0};
  return piece_start(pieces_.front());
}

Point NewtonBody::end_point() const {
  if (!asymptotes_.attained_y) throw std::logic_error("end_point of a body with open horizontal asymptote");
  if (pieces_.empty()) return {asymptotes_.x0, asymptotes_.y0};
  return piece_end(pieces_.back());
}

ExactReal NewtonBody::boundary_at(const ExactReal& x) const {
  const auto& x0 = asymptotes_.x0;
  if (x < x0 || (x == x0 && !asymptotes_.attained_x))
    throw std::domain_error("boundary_at outside the body's x-range");
  // last piece whose start is <= x
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const ExactReal& v, const BoundaryPiece& p) { return v < piece_start_x(p); });
  if (it == pieces_.begin()) return pieces_.empty() ? asymptotes_.y0 : piece_start(pieces_.front()).y;
  const auto& piece = *std::prev(it);
  const auto end_x = piece_end_x(piece);
  if (end_x && *end_x < x) return asymptotes_.y0;
  if (const auto* seg = std::get_if<Segment>(&piece)) {
    return seg->start.y + (x - seg->start.x) * segment_slope(*seg);
  }
  return arc_value(std::get<Arc>(piece), x);
}

bool NewtonBody::contains(const ExactReal& x, const ExactReal& y, bool strict) const {
  const auto& x0 = asymptotes_.x0;
  if (x < x0) return false;
  if (x == x0) {
    if (strict || !asymptotes_.attained_x) return false;
    return !(y < start_point().y);
  }
  const ExactReal f = boundary_at(x);
  return strict ? f < y : !(y < f);
}

bool NewtonBody::is_quadrant() const {
  return pieces_.empty() && asymptotes_.x0.sign() == 0 && asymptotes_.y0.sign() == 0;
}

NewtonBody scale(const NewtonBody& body, const ExactReal& c) {
  if (c.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<BoundaryPiece> pieces;
  pieces.reserve(body.pieces().size());
  for (const auto& piece : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      pieces.emplace_back(Segment{{c * seg->start.x, c * seg->start.y}, {c * seg->end.x, c * seg->end.y}});
    } else {
      const auto& arc = std::get<Arc>(piece);
      std::optional<ExactReal> xhi;
      if (arc.xhi) xhi = c * *arc.xhi;
      pieces.emplace_back(Arc{c * arc.a, c * arc.b, c * c * arc.s, c * arc.xlo, xhi});
    }
  }
  const auto& asym = body.asymptotes();
  return NewtonBody::from_pieces(std::move(pieces),
                                 {c * asym.x0, c * asym.y0, asym.attained_x, asym.attained_y});
}

// ---------------------------------------------------------------------------
// Slope chains and the merge behind Minkowski sums.

namespace detail {

bool Slope::operator<(const Slope& o) const {
  if (neg_inf) return !o.neg_inf;
  if (o.neg_inf) return false;
  return value < o.value;
}

bool Slope::operator==(const Slope& o) const {
  return neg_inf == o.neg_inf && (neg_inf || value == o.value);
}

std::vector<ChainElem> build_chain(const NewtonBody& body) {
  std::vector<ChainElem> chain;
  const auto& asym = body.asymptotes();
  const auto& pieces = body.pieces();
  if (pieces.empty()) {
    const Point p{asym.x0, asym.y0};
    chain.push_back({ChainElem::Kind::corner, Slope::minus_infinity(), Slope::of(kZero), p, p, {}});
    return chain;
  }
  Slope prev_end = Slope::minus_infinity();
  if (asym.attained_x) {
    const Point p = body.start_point();
    const Slope first = Slope::of(piece_start_slope(pieces.front()));
    chain.push_back({ChainElem::Kind::corner, prev_end, first, p, p, {}});
    prev_end = first;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      const Slope s = Slope::of(segment_slope(*seg));
      if (prev_end < s) chain.push_back({ChainElem::Kind::corner, prev_end, s, seg->start, seg->start, {}});
      chain.push_back({ChainElem::Kind::segment, s, s, seg->start, seg->end, {}});
      prev_end = s;
    } else {
      const auto& arc = std::get<Arc>(piece);
      ChainElem elem{ChainElem::Kind::arc, Slope::minus_infinity(), Slope::of(kZero), {}, {}, arc};
      if (!leading_arc(piece)) {
        elem.lo = Slope::of(arc_slope(arc, arc.xlo));
        elem.start = piece_start(piece);
        if (prev_end < elem.lo) chain.push_back({ChainElem::Kind::corner, prev_end, elem.lo, elem.start, elem.start, {}});
      }
      if (arc.xhi) {
        elem.hi = Slope::of(arc_slope(arc, *arc.xhi));
        elem.end = piece_end(piece);
      }
      prev_end = elem.hi;
      chain.push_back(std::move(elem));
    }
  }
  if (asym.attained_y) {
    const Point p = body.end_point();
    chain.push_back({ChainElem::Kind::corner, prev_end, Slope::of(kZero), p, p, {}});
  }
  return chain;
}

namespace {

bool strictly_inside(const Slope& lo, const ExactReal& beta, const Slope& hi) {
  const Slope b = Slope::of(beta);
  return lo < b && b < hi;
}

Point arc_point_at_slope(const Arc& arc, const ExactReal& beta) {
  const ExactReal t = sqrt_exact(arc.s / (-beta));
  return {arc.a + t, arc.b + arc.s / t};
}

}  // namespace

Support support_at(const std::vector<ChainElem>& chain, const ExactReal& beta) {
  for (const auto& e : chain)
    if (e.kind == ChainElem::Kind::segment && e.lo.value == beta) return {e.start, e.end};
  for (const auto& e : chain) {
    if (e.kind == ChainElem::Kind::segment || !strictly_inside(e.lo, beta, e.hi)) continue;
    if (e.kind == ChainElem::Kind::corner) return {e.start, e.start};
    const Point p = arc_point_at_slope(e.arc, beta);
    return {p, p};
  }
  for (const auto& e : chain)
    if (e.kind != ChainElem::Kind::segment && !e.hi.neg_inf && e.hi.value == beta) return {e.end, e.end};
  throw std::logic_error("slope not covered by boundary chain");
}

Merge merge_chains(const NewtonBody& a, const NewtonBody& b) {
  Merge m;
  m.chain_a = build_chain(a);
  m.chain_b = build_chain(b);
  m.asym_a = a.asymptotes();
  m.asym_b = b.asymptotes();
  std::vector<ExactReal> betas;
  for (const auto* chain : {&m.chain_a, &m.chain_b}) {
    for (const auto& e : *chain) {
      if (!e.lo.neg_inf) betas.push_back(e.lo.value);
      if (!e.hi.neg_inf && e.hi.value.sign() < 0) betas.push_back(e.hi.value);
    }
  }
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  betas.erase(std::remove_if(betas.begin(), betas.end(), [](const ExactReal& v) { return v.sign() >= 0; }),
              betas.end());
  m.betas = betas;
  for (const auto& beta : betas) {
    m.support_a.push_back(support_at(m.chain_a, beta));
    m.support_b.push_back(support_at(m.chain_b, beta));
  }
  const auto cover = [](const std::vector<ChainElem>& chain, const Slope& left, const Slope& right) -> std::size_t {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& e = chain[i];
      if (e.kind == ChainElem::Kind::segment) continue;
      if (!(left < e.lo) && !(e.hi < right)) return i;
    }
    throw std::logic_error("slope interval not covered by boundary chain");
  };
  for (std::size_t k = 0; k <= betas.size(); ++k) {
    const Slope left = k == 0 ? Slope::minus_infinity() : Slope::of(betas[k - 1]);
    const Slope right = k == betas.size() ? Slope::of(kZero) : Slope::of(betas[k]);
    m.interval_a.push_back(cover(m.chain_a, left, right));
    m.interval_b.push_back(cover(m.chain_b, left, right));
  }
  return m;
}

ArcForm interval_arc(const Merge& m, std::size_t k) {
  const auto& ea = m.chain_a[m.interval_a[k]];
  const auto& eb = m.chain_b[m.interval_b[k]];
  ArcForm f;
  using K = ChainElem::Kind;
  if (ea.kind == K::corner && eb.kind == K::corner) return f;
  f.present = true;
  if (ea.kind == K::arc && eb.kind == K::corner) {
    f.a0 = eb.start.x;
    f.a1 = ea.arc.a;
    f.b0 = eb.start.y;
    f.b1 = ea.arc.b;
    f.s2 = ea.arc.s;
  } else if (ea.kind == K::corner && eb.kind == K::arc) {
    f.a0 = eb.arc.a;
    f.a1 = ea.start.x;
    f.b0 = eb.arc.b;
    f.b1 = ea.start.y;
    f.s0 = eb.arc.s;
  } else {
    f.a0 = eb.arc.a;
    f.a1 = ea.arc.a;
    f.b0 = eb.arc.b;
    f.b1 = ea.arc.b;
    f.s0 = eb.arc.s;
    f.s1 = 2 * sqrt_exact(ea.arc.s * eb.arc.s);
    f.s2 = ea.arc.s;
  }
  return f;
}

namespace {

Point combine(const ExactReal& c, const Point& pa, const Point& pb) {
  return {c * pa.x + pb.x, c * pa.y + pb.y};
}

}  // namespace

NewtonBody assemble(const Merge& m, const ExactReal& c) {
  std::vector<BoundaryPiece> pieces;
  const std::size_t n = m.betas.size();
  for (std::size_t k = 0; k <= n; ++k) {
    const ArcForm f = interval_arc(m, k);
    if (f.present) {
      Arc arc;
      arc.a = f.a0 + c * f.a1;
      arc.b = f.b0 + c * f.b1;
      arc.s = f.s0 + c * f.s1 + c * c * f.s2;
      arc.xlo = k == 0 ? arc.a : combine(c, m.support_a[k - 1].second, m.support_b[k - 1].second).x;
      if (k < n) arc.xhi = combine(c, m.support_a[k].first, m.support_b[k].first).x;
      pieces.emplace_back(std::move(arc));
    }
    if (k < n) {
      const auto& sa = m.support_a[k];
      const auto& sb = m.support_b[k];
      if (!(sa.first == sa.second) || !(sb.first == sb.second)) {
        pieces.emplace_back(Segment{combine(c, sa.first, sb.first), combine(c, sa.second, sb.second)});
      }
    }
  }
  Asymptotes asym{c * m.asym_a.x0 + m.asym_b.x0, c * m.asym_a.y0 + m.asym_b.y0,
                  m.asym_a.attained_x && m.asym_b.attained_x, m.asym_a.attained_y && m.asym_b.attained_y};
  return NewtonBody::from_pieces(std::move(pieces), std::move(asym));
}

}  // namespace detail

NewtonBody minkowski_sum(const NewtonBody& a, const NewtonBody& b) {
  return detail::assemble(detail::merge_chains(a, b), ExactReal(1L));
}

// ---------------------------------------------------------------------------

ExactReal gauge(const NewtonBody& body, LatticePoint p) {
  if (p.x < 1 || p.y < 1) throw std::invalid_argument("gauge needs a point with positive coordinates");
  if (body.is_quadrant()) throw std::domain_error("the quadrant has infinite gauge");
  const ExactReal px(p.x);
  const ExactReal py(p.y);
  const auto& asym = body.asymptotes();
  // The ray u * p (u > 0) enters the body once; collect the entry parameter u.
  std::optional<ExactReal> best;
  const auto offer = [&](const ExactReal& u) {
    if (u.sign() > 0 && (!best || u < *best)) best = u;
  };
  if (asym.attained_x && asym.x0.sign() > 0) {
    const ExactReal u = asym.x0 / px;
    if (!(u * py < body.start_point().y)) offer(u);
  }
  if (asym.attained_y && asym.y0.sign() > 0) {
    const ExactReal u = asym.y0 / py;
    if (!(u * px < body.end_point().x)) offer(u);
  }
  for (const auto& piece : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      const ExactReal dx = seg->end.x - seg->start.x;
      const ExactReal dy = seg->end.y - seg->start.y;
      const ExactReal den = px * dy - py * dx;
      if (den.sign() == 0) continue;
      const ExactReal u = (seg->start.x * dy - seg->start.y * dx) / den;
      const ExactReal x = u * px;
      if (!(x < seg->start.x) && !(seg->end.x < x)) offer(u);
    } else {
      const auto& arc = std::get<Arc>(piece);
      if (arc.a.is_rational() && arc.b.is_rational() && arc.s.is_rational()) {
        // entry abscissa x = u px = (qb + sqrt(disc)) / (2 py), all in Q
        const Rational& a = arc.a.rational_part();
        const Rational& b = arc.b.rational_part();
        const Rational qb = a * p.y + b * p.x;
        const Rational disc = qb * qb - 4 * Rational(p.x * p.y) * (a * b - arc.s.rational_part());
        const ExactReal x = (ExactReal(qb) + ExactReal::sqrt(disc)) / ExactReal(Rational(2 * p.y));
        if (!(arc.a < x) || x < arc.xlo || (arc.xhi && *arc.xhi < x)) continue;
        offer(x / px);
        continue;
      }
      // (u px - a)(u py - b) = s, upper branch = larger root
      const ExactReal qa = px * py;
      const ExactReal qb = arc.a * py + arc.b * px;
      const ExactReal qc = arc.a * arc.b - arc.s;
      const ExactReal disc = qb * qb - 4L * qa * qc;
      const ExactReal u = (qb + sqrt_exact(disc)) / (2L * qa);
      const ExactReal x = u * px;
      if (!(arc.a < x) || x < arc.xlo || (arc.xhi && *arc.xhi < x)) continue;
      offer(u);
    }
  }
  if (!best) throw std::logic_error("ray does not meet the boundary");
  return ExactReal(1L) / *best;
}

// ---------------------------------------------------------------------------

SupportEvaluator::SupportEvaluator(const NewtonBody& body) {
  const auto& asym = body.asymptotes();
  x0_ = asym.x0.to_double();
  y0_ = asym.y0.to_double();
  if (body.pieces().empty()) points_.emplace_back(x0_, y0_);
  for (const auto& piece : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      points_.emplace_back(seg->start.x.to_double(), seg->start.y.to_double());
      points_.emplace_back(seg->end.x.to_double(), seg->end.y.to_double());
    } else {
      const auto& arc = std::get<Arc>(piece);
      FloatArc fa{arc.a.to_double(), arc.b.to_double(), arc.s.to_double(), arc.xlo.to_double(),
                  arc.xhi ? arc.xhi->to_double() : std::numeric_limits<double>::infinity()};
      arcs_.push_back(fa);
      if (!leading_arc(piece)) {
        const Point p = piece_start(piece);
        points_.emplace_back(p.x.to_double(), p.y.to_double());
      }
      if (arc.xhi) {
        const Point p = piece_end(piece);
        points_.emplace_back(p.x.to_double(), p.y.to_double());
      }
    }
  }
}

double SupportEvaluator::operator()(double u1, double u2) const {
  if (u1 > 0 || u2 > 0 || (u1 == 0 && u2 == 0))
    throw std::invalid_argument("support_value needs u <= 0, u != 0");
  if (u1 == 0) return u2 * y0_;
  if (u2 == 0) return u1 * x0_;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : points_) best = std::max(best, u1 * x + u2 * y);
  for (const auto& arc : arcs_) {
    const double x = arc.a + std::sqrt(u2 * arc.s / u1);
    if (x >= arc.xlo && x <= arc.xhi) {
      best = std::max(best, u1 * arc.a + u2 * arc.b - 2.0 * std::sqrt(u1 * u2 * arc.s));
    }
  }
  return best;
}

double support_value(const NewtonBody& body, double u1, double u2) { return SupportEvaluator(body)(u1, u2); }

// ---------------------------------------------------------------------------

namespace {

struct CandidateScan {
  std::vector<ExactReal> valid;
  bool incomplete = false;
};

bool in_closed_range(const ExactReal& lo, const ExactReal& x, const ExactReal& hi) {
  return !(x < lo) && !(hi < x);
}

CandidateScan scan_mixed_candidates(const detail::Merge& m, const ExactReal& px, const ExactReal& py) {
  CandidateScan scan;
  const std::size_t n = m.betas.size();
  const auto guarded = [&](auto&& fn) {
    try {
      fn();
    } catch (const NotQuadratic&) {
      scan.incomplete = true;
    }
  };
  // Segments at breakpoint slopes: the line through c*A1 + B1 with slope beta
  // is affine in c.
  for (std::size_t k = 0; k < n; ++k) {
    const auto& sa = m.support_a[k];
    const auto& sb = m.support_b[k];
    if (sa.first == sa.second && sb.first == sb.second) continue;
    guarded([&] {
      const ExactReal& beta = m.betas[k];
      const ExactReal den = sa.first.y - beta * sa.first.x;
      if (den.sign() == 0) return;
      const ExactReal c = (py - sb.first.y - beta * (px - sb.first.x)) / den;
      if (c.sign() <= 0) return;
      const ExactReal xs = c * sa.first.x + sb.first.x;
      const ExactReal xe = c * sa.second.x + sb.second.x;
      if (in_closed_range(xs, px, xe)) scan.valid.push_back(c);
    });
  }
  // Arcs on open slope intervals: (px - a(c))(py - b(c)) = s(c), quadratic in c.
  for (std::size_t k = 0; k <= n; ++k) {
    guarded([&] {
      const detail::ArcForm f = detail::interval_arc(m, k);
      if (!f.present) return;
      const ExactReal x0 = px - f.a0;
      const ExactReal x1 = -f.a1;
      const ExactReal y0 = py - f.b0;
      const ExactReal y1 = -f.b1;
      const ExactReal k2 = x1 * y1 - f.s2;
      const ExactReal k1 = x0 * y1 + x1 * y0 - f.s1;
      const ExactReal k0 = x0 * y0 - f.s0;
      std::vector<ExactReal> roots;
      if (k2.sign() == 0) {
        if (k1.sign() != 0) roots.push_back(-k0 / k1);
      } else {
        const ExactReal disc = k1 * k1 - 4L * k2 * k0;
        if (disc.sign() < 0) return;
        const ExactReal root = sqrt_exact(disc);
        roots.push_back((-k1 + root) / (2L * k2));
        roots.push_back((-k1 - root) / (2L * k2));
      }
      for (const auto& c : roots) {
        if (c.sign() <= 0) continue;
        if ((x0 + x1 * c).sign() <= 0 || (y0 + y1 * c).sign() <= 0) continue;
        if (k > 0) {
          const ExactReal lo = c * m.support_a[k - 1].second.x + m.support_b[k - 1].second.x;
          if (px < lo) continue;
        }
        if (k < n) {
          const ExactReal hi = c * m.support_a[k].first.x + m.support_b[k].first.x;
          if (hi < px) continue;
        }
        scan.valid.push_back(c);
      }
    });
  }
  // Rays on attained asymptotes.
  const auto& ca = m.chain_a;
  const auto& cb = m.chain_b;
  if (m.asym_a.attained_x && m.asym_b.attained_x) {
    guarded([&] {
      const Point& pa = ca.front().start;
      const Point& pb = cb.front().start;
      if (pa.x.sign() == 0) return;
      const ExactReal c = (px - pb.x) / pa.x;
      if (c.sign() > 0 && !(py < c * pa.y + pb.y)) scan.valid.push_back(c);
    });
  }
  if (m.asym_a.attained_y && m.asym_b.attained_y) {
    guarded([&] {
      const Point& pa = ca.back().start;
      const Point& pb = cb.back().start;
      if (pa.y.sign() == 0) return;
      const ExactReal c = (py - pb.y) / pa.y;
      if (c.sign() > 0 && !(px < c * pa.x + pb.x)) scan.valid.push_back(c);
    });
  }
  return scan;
}

Rational bisect_mixed(const detail::Merge& m, const ExactReal& px, const ExactReal& py) {
  const auto member = [&](const Rational& c) {
    return detail::assemble(m, ExactReal(c)).contains(px, py, false);
  };
  Rational hi = 1;
  Rational lo = 1;
  int guard = 0;
  if (member(hi)) {
    while (member(hi)) {
      lo = hi;
      hi *= 2;
      if (++guard > 200) throw NoSolution("point stays inside c*phi + psi for all c");
    }
  } else {
    while (!member(lo)) {
      hi = lo;
      lo /= 2;
      if (++guard > 200) throw NoSolution("point is outside c*phi + psi for all c > 0");
    }
  }
  const Rational tolerance = hi / Rational(Integer(1) << 64);
  while (hi - lo > tolerance) {
    const Rational mid = (lo + hi) / 2;
    if (member(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

MixedGauge mixed_gauge(const NewtonBody& phi, const NewtonBody& psi, LatticePoint p) {
  if (p.x < 1 || p.y < 1) throw std::invalid_argument("mixed_gauge needs a point with positive coordinates");
  if (phi.is_quadrant()) throw NoSolution("phi is the quadrant; c is unbounded");
  const ExactReal px(p.x);
  const ExactReal py(p.y);
  const detail::Merge m = detail::merge_chains(phi, psi);
  CandidateScan scan = scan_mixed_candidates(m, px, py);
  std::optional<ExactReal> best;
  for (const auto& c : scan.valid)
    if (!best || *best < c) best = c;
  if (!scan.incomplete) {
    if (!best) throw NoSolution("no c > 0 puts the point on the boundary of c*phi + psi");
    return {*best, true};
  }
  const Rational approx = bisect_mixed(m, px, py);
  if (best && std::abs(best->to_double() - approx.get_d()) <= 1e-12 * std::max(1.0, approx.get_d())) {
    return {*best, true};
  }
  return {ExactReal(approx), false};
}

std::string describe(const NewtonBody& body) {
  std::ostringstream out;
  const auto& a = body.asymptotes();
  out << "x0 = " << to_string(a.x0) << (a.attained_x ? " (attained)" : " (open)") << "\n";
  out << "y0 = " << to_string(a.y0) << (a.attained_y ? " (attained)" : " (open)") << "\n";
  if (body.pieces().empty()) out << "corner at (" << to_string(a.x0) << ", " << to_string(a.y0) << ")\n";
  for (const auto& piece : body.pieces()) {
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      out << "segment (" << to_string(seg->start.x) << ", " << to_string(seg->start.y) << ") -> ("
          << to_string(seg->end.x) << ", " << to_string(seg->end.y) << ")\n";
    } else {
      const auto& arc = std::get<Arc>(piece);
      out << "arc y = " << to_string(arc.b) << " + " << to_string(arc.s) << "/(x - " << to_string(arc.a)
          << ") on (" << to_string(arc.xlo) << ", " << (arc.xhi ? to_string(*arc.xhi) : std::string("inf"))
          << ")\n";
    }
  }
  return out.str();
}

}  // namespace njump
