#pragma once

// Newton convex bodies P in R^2_{>=0} with P + R^2_{>=0} contained in P, stored
// as the graph of their lower boundary y = f(x): a chain of segments and
// hyperbola arcs ordered by increasing x.

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "njump/exact.hpp"

namespace njump {

struct Point {
  ExactReal x;
  ExactReal y;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point start;
  Point end;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Graph of y = b + s / (x - a) over (xlo, xhi); xhi == nullopt means +inf.
/// xlo == a only for a leading arc whose vertical asymptote is x = a.
struct Arc {
  ExactReal a;
  ExactReal b;
  ExactReal s;
  ExactReal xlo;
  std::optional<ExactReal> xhi;
  friend bool operator==(const Arc&, const Arc&) = default;
};

using BoundaryPiece = std::variant<Segment, Arc>;

struct Asymptotes {
  ExactReal x0;
  ExactReal y0;
  bool attained_x = false;
  bool attained_y = false;
  friend bool operator==(const Asymptotes&, const Asymptotes&) = default;
};

class NewtonBody {
 public:
  /// Validates and canonicalizes a boundary description (merges adjacent
  /// arcs with equal parameters and collinear segments). Throws
  /// std::invalid_argument when the pieces do not describe a valid body.
  static NewtonBody from_pieces(std::vector<BoundaryPiece> pieces, Asymptotes asymptotes);

  /// Staircase hull of the points plus the positive quadrant.
  static NewtonBody polyhedral(const std::vector<std::pair<Rational, Rational>>& vertices);
  /// (x - a)(y - b) >= s with x > a.
  static NewtonBody hyperbola(const Rational& a, const Rational& b, const Rational& s);
  /// Newton polygon of log(|z1|^m1 + |z2|^m2).
  static NewtonBody diagonal(const Rational& m1, const Rational& m2);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  const Asymptotes& asymptotes() const { return asymptotes_; }

  /// First boundary point (x0, f(x0)); only defined when the vertical
  /// asymptote is attained.
  Point start_point() const;
  /// Last boundary point where f reaches y0; only when y0 is attained.
  Point end_point() const;

  /// Boundary height f(x). Requires x > x0, or x == x0 with attained x0.
  ExactReal boundary_at(const ExactReal& x) const;

  bool contains(const ExactReal& x, const ExactReal& y, bool strict) const;
  /// True when the body is the whole quadrant (contains the origin).
  bool is_quadrant() const;

  friend bool operator==(const NewtonBody&, const NewtonBody&) = default;

 private:
  NewtonBody() = default;
  std::vector<BoundaryPiece> pieces_;
  Asymptotes asymptotes_;
};

/// c * B for c > 0.
NewtonBody scale(const NewtonBody& body, const ExactReal& c);
/// Infimal convolution of the boundaries (slope-matching merge).
NewtonBody minkowski_sum(const NewtonBody& a, const NewtonBody& b);
inline bool equal_bodies(const NewtonBody& a, const NewtonBody& b) { return a == b; }
inline Asymptotes asymptotes(const NewtonBody& body) { return body.asymptotes(); }

/// sup{ t > 0 : p in t * B } for p >= (1, 1). Throws std::domain_error for
/// the quadrant, whose gauge is infinite.
ExactReal gauge(const NewtonBody& body, LatticePoint p);

/// sup over the body of <lambda, u> for u <= 0, u != 0.
double support_value(const NewtonBody& body, double u1, double u2);

/// Floating-point copy of a body for repeated support-function evaluation.
class SupportEvaluator {
 public:
  explicit SupportEvaluator(const NewtonBody& body);
  double operator()(double u1, double u2) const;

 private:
  struct FloatArc {
    double a, b, s, xlo, xhi;
  };
  std::vector<std::pair<double, double>> points_;
  std::vector<FloatArc> arcs_;
  double x0_ = 0;
  double y0_ = 0;
};

/// Result of solving p in boundary(c * phi + psi) for c.
struct MixedGauge {
  ExactReal value;
  /// false when the value came from the bisection fallback (a rational
  /// within 2^-64 relative precision).
  bool exact = true;
};

/// Thrown when no c > 0 puts p on the boundary of c * phi + psi.
class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sup{ c > 0 : p in c * phi + psi }, solved exactly on the active boundary
/// piece of the sum, whose combinatorics does not depend on c.
MixedGauge mixed_gauge(const NewtonBody& phi, const NewtonBody& psi, LatticePoint p);

std::string describe(const NewtonBody& body);

}  // namespace njump
