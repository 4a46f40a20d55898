#pragma once

// Legendre-form elliptic curves y^2 = x(x-1)(x-lambda): S3 orbits of the
// parameter, j-invariants, branch-set normalization and involution pairings.

#include <array>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ellfactors/numerics.hpp"

namespace ellfactors::legendre {

using numerics::ComplexValue;
using numerics::MobiusMap;
using numerics::SpherePoint;

// A value of C - {0, 1}.
class LambdaParam {
 public:
  // Throws InvalidDomain if value is within eps of 0 or 1.
  explicit LambdaParam(ComplexValue value);
  LambdaParam(int value) : LambdaParam(ComplexValue(value)) {}  // NOLINT

  const ComplexValue& value() const { return value_; }
  operator const ComplexValue&() const { return value_; }  // NOLINT

 private:
  ComplexValue value_;
};

// Pairwise-distinct LambdaParams.
class LambdaTuple {
 public:
  // Throws InvalidDomain naming the first colliding pair (1-based).
  explicit LambdaTuple(std::vector<LambdaParam> values);
  LambdaTuple(std::initializer_list<LambdaParam> values)
      : LambdaTuple(std::vector<LambdaParam>(values)) {}

  std::size_t size() const { return values_.size(); }
  const LambdaParam& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<LambdaParam>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<LambdaParam> values_;
};

// Closure of {lambda} under lambda -> 1/lambda and lambda -> 1 - lambda.
std::vector<ComplexValue> s3_orbit(const LambdaParam& l);

// 256 (1 - l + l^2)^3 / (l^2 (1 - l)^2)
ComplexValue j_invariant(const LambdaParam& l);

bool same_curve(const LambdaParam& l1, const LambdaParam& l2);

// Legendre parameter of the elliptic curve branched over the four points.
// The value depends on the point order only up to the S3 action.
LambdaParam lambda_of_quartic(const std::array<SpherePoint, 4>& roots);

struct Pairing {
  std::vector<std::pair<SpherePoint, SpherePoint>> pairs;
  // Set when the map fixes a point of the set or sends it outside the set.
  std::optional<SpherePoint> offending;

  bool ok() const { return !offending.has_value(); }
};

// Throws NotInvolution unless m o m = id within eps.
Pairing branch_set_pairing(const MobiusMap& m, std::span<const SpherePoint> points);

}  // namespace ellfactors::legendre
