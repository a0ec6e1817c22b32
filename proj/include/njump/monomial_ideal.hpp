#pragma once

// Monomial ideals in k[x, y] as staircases of minimal exponent vectors.

#include <string>
#include <vector>

#include "njump/newton_body.hpp"

namespace njump {

class MonomialIdeal {
 public:
  /// Minimal generators of the ideal generated by the given exponents.
  /// Throws std::invalid_argument for an empty list (the zero ideal).
  static MonomialIdeal from_generators(std::vector<LatticePoint> exponents);
  static MonomialIdeal unit() { return from_generators({{0, 0}}); }

  /// Antichain sorted by x ascending (so y strictly descending).
  const std::vector<LatticePoint>& generators() const { return gens_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0] == LatticePoint{0, 0}; }
  bool contains(LatticePoint monomial) const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  MonomialIdeal() = default;
  std::vector<LatticePoint> gens_;
};

/// Minimal lattice points of B (interior points when strict). The scan jumps
/// over runs of equal column minima, so far-out asymptotes cost O(log) steps.
/// Throws std::runtime_error above max_generators.
MonomialIdeal lattice_staircase(const NewtonBody& body, bool strict, std::size_t max_generators = 10'000'000);

/// { A : A + (1,1) in int(c * B) }.
MonomialIdeal multiplier_ideal(const NewtonBody& body, const ExactReal& c);

NewtonBody newton_polyhedron(const MonomialIdeal& ideal);
/// J subset of I.
bool ideal_contains_ideal(const MonomialIdeal& i, const MonomialIdeal& j);
MonomialIdeal ideal_product(const MonomialIdeal& i, const MonomialIdeal& j);

/// "1", "x", "y^3", "x^2*y".
std::string monomial_string(LatticePoint exponent);
/// Generators joined by ", " in staircase order.
std::string to_string(const MonomialIdeal& ideal);
/// "a,b" header plus one row per generator.
std::string to_csv(const MonomialIdeal& ideal);

}  // namespace njump
