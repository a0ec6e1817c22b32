#pragma once

// Slope-indexed view of a boundary, shared by the Minkowski sum and the
// mixed gauge solver. Every element covers a closed interval of slopes in
// [-inf, 0]; segments cover a single slope.

#include <utility>
#include <vector>

#include "njump/newton_body.hpp"

namespace njump::detail {

struct Slope {
  bool neg_inf = false;
  ExactReal value;

  static Slope minus_infinity() { return {true, ExactReal{}}; }
  static Slope of(const ExactReal& v) { return {false, v}; }
  bool operator<(const Slope& o) const;
  bool operator==(const Slope& o) const;
};

struct ChainElem {
  enum class Kind { corner, segment, arc };
  Kind kind;
  Slope lo;
  Slope hi;
  // corner: start == end. arc: endpoints valid only where the slope is finite
  // and the arc is bounded on that side.
  Point start;
  Point end;
  Arc arc;
};

std::vector<ChainElem> build_chain(const NewtonBody& body);

/// Supporting face at slope beta: (first, second) are the ends of a segment
/// of that slope, or the same point twice.
using Support = std::pair<Point, Point>;
Support support_at(const std::vector<ChainElem>& chain, const ExactReal& beta);

struct Merge {
  std::vector<ChainElem> chain_a;
  std::vector<ChainElem> chain_b;
  Asymptotes asym_a;
  Asymptotes asym_b;
  std::vector<ExactReal> betas;     // sorted breakpoints, all < 0
  std::vector<Support> support_a;   // per breakpoint
  std::vector<Support> support_b;
  std::vector<std::size_t> interval_a;  // element covering each open interval
  std::vector<std::size_t> interval_b;  // betas.size() + 1 entries
};

Merge merge_chains(const NewtonBody& a, const NewtonBody& b);

/// Arc of c*A + B on an open slope interval: a = a0 + a1 c, b = b0 + b1 c,
/// s = s0 + s1 c + s2 c^2. present == false for corner + corner.
struct ArcForm {
  bool present = false;
  ExactReal a0, a1, b0, b1, s0, s1, s2;
};

ArcForm interval_arc(const Merge& m, std::size_t k);

/// c*A + B for c > 0.
NewtonBody assemble(const Merge& m, const ExactReal& c);

}  // namespace njump::detail
