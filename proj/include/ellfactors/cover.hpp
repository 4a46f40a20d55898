#pragma once

// Z_2^n branched covers of the Riemann sphere described by GF(2) monodromy:
// components, genera, fixed points, quotients by subgroups, and the
// Kani-Rosen bookkeeping that splits the Jacobian into quotient Jacobians.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellfactors/gf2.hpp"
#include "ellfactors/numerics.hpp"

namespace ellfactors::cover {

using gf2::MonodromyVector;
using gf2::Subspace;
using numerics::ComplexValue;
using numerics::SpherePoint;
using Integer = boost::multiprecision::cpp_int;

struct BranchDatum {
  SpherePoint point;
  MonodromyVector vector;
};

class CoverModel {
 public:
  // Validates: 1 <= rank <= 62, every vector nonzero and inside GF(2)^rank,
  // branch points pairwise distinct, XOR of all vectors zero. Throws
  // InvalidCover otherwise (CollidingPoints for coincident points).
  CoverModel(int rank, std::vector<BranchDatum> branch);

  int rank() const { return rank_; }
  const std::vector<BranchDatum>& branch() const { return branch_; }
  int branch_count() const { return static_cast<int>(branch_.size()); }

  Subspace monodromy_span() const;
  bool connected() const;

  // One connected component as a cover in its own right: the deck group
  // shrinks to the span of the monodromy, re-coordinatized by its echelon
  // basis.
  CoverModel component() const;

 private:
  int rank_;
  std::vector<BranchDatum> branch_;
};

// Index-two subgroup, stored as the nonzero functional whose kernel it is.
struct IndexTwoSubgroup {
  MonodromyVector functional;

  explicit IndexTwoSubgroup(MonodromyVector f);
  Subspace subgroup(int rank) const { return Subspace::kernel(rank, functional); }
};

// y^2 = leading * prod (x - r) over the finite branch values; a branch value
// at infinity deletes its linear factor.
struct FactorCurve {
  ComplexValue leading{1};
  std::vector<SpherePoint> roots;
  int genus = 0;

  static FactorCurve hyperelliptic(std::vector<SpherePoint> branch_values);

  bool deleted_infinity() const;
  std::vector<ComplexValue> finite_roots() const;
  // `y^2 = K * (x - r1) * (x - r2) * ...`; `precise` selects 17-digit output.
  std::string equation(bool precise = false) const;
};

struct KaniRosenDiagnostics {
  bool subgroups_commute = true;  // condition 1: closed subgroups of an abelian group
  bool pairwise_joins_genus_zero = true;  // condition 2
  std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
  std::size_t pairs_checked = 0;
  std::int64_t genus_sum = 0;  // condition 3: compare with total_genus
  std::int64_t total_genus = 0;

  bool genus_sum_matches() const { return genus_sum == total_genus; }
  bool ok() const { return subgroups_commute && pairwise_joins_genus_zero && genus_sum_matches(); }
};

struct Factor {
  IndexTwoSubgroup subgroup;
  FactorCurve curve;
};

struct DecompositionReport {
  std::int64_t total_genus = 0;
  std::vector<Factor> factors;  // functionals in lexicographic bit order
  std::int64_t genus_sum = 0;
  bool kani_rosen_ok = false;
  KaniRosenDiagnostics kani_rosen;
};

// 2^(n - rank of the monodromy span).
std::int64_t component_count(const CoverModel& c);

// Riemann-Hurwitz for a connected cover: 1 - 2^n + B 2^(n-2). Throws
// Disconnected otherwise.
std::int64_t total_genus(const CoverModel& c);

// Genus of one connected component.
std::int64_t component_genus(const CoverModel& c);

// Each branch point whose vector equals h contributes a fiber of 2^(n-1)
// fixed points. Throws ZeroElement for h = 0, Disconnected if c is not connected.
std::int64_t fixed_point_count(const CoverModel& c, MonodromyVector h);

// 1 - m + m B / 4 with m the index of the subgroup and B the number of
// branch vectors outside it.
std::int64_t quotient_genus(const CoverModel& c, const Subspace& subgroup);
std::int64_t quotient_genus(const CoverModel& c, const IndexTwoSubgroup& subgroup);
// Independent generators required; throws DependentBasis.
std::int64_t quotient_genus(const CoverModel& c, std::span<const MonodromyVector> basis);

FactorCurve quotient_equation(const CoverModel& c, const IndexTwoSubgroup& subgroup);

DecompositionReport decompose(const CoverModel& c);

// Never throws on a failed condition; failures land in the diagnostics.
KaniRosenDiagnostics kani_rosen_check(const CoverModel& c, std::span<const Subspace> subgroups);

// sum_{k even, 2<=k<=s} C(s,k)(k-1) against 1 + 2^(s-2)(s-2): the genus of
// the reducible fiber-product component equals the sum over its quotients.
std::pair<Integer, Integer> reducible_genus_identity(int s);

// sum_{k odd} C(r,k)(k+1)/2 + sum_{k even, k>=4} C(r,k)(k-2)/2 against
// 1 + 2^(r-2)(r-1), the same statement for the irreducible fiber product.
std::pair<Integer, Integer> irreducible_genus_identity(int r);

}  // namespace ellfactors::cover
