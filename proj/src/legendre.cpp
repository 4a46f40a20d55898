#include "ellfactors/legendre.hpp"

#include <string>

namespace ellfactors::legendre {

using numerics::format_short;
using numerics::is_close;

LambdaParam::LambdaParam(ComplexValue value) : value_(numerics::require_finite(std::move(value), "lambda")) {
  if (is_close(value_, ComplexValue(0)) || is_close(value_, ComplexValue(1))) {
    throw Error(ErrorKind::InvalidDomain, "lambda = " + format_short(value_) + " not in Delta_1");
  }
}

LambdaTuple::LambdaTuple(std::vector<LambdaParam> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    for (std::size_t j = i + 1; j < values_.size(); ++j) {
      if (is_close(values_[i].value(), values_[j].value())) {
        throw Error(ErrorKind::InvalidDomain, "lambda_" + std::to_string(i + 1) + " = lambda_" +
                                                  std::to_string(j + 1) + " = " +
                                                  format_short(values_[i].value()) +
                                                  ", tuple not in Delta_" +
                                                  std::to_string(values_.size()));
      }
    }
  }
}

std::vector<ComplexValue> s3_orbit(const LambdaParam& l) {
  std::vector<ComplexValue> orbit{l.value()};
  auto contains = [&](const ComplexValue& z) {
    for (const auto& w : orbit) {
      if (is_close(z, w)) return true;
    }
    return false;
  };
  // Each pass applies both generators to every element found so far.
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const ComplexValue z = orbit[i];
    for (ComplexValue image : {ComplexValue(1) / z, ComplexValue(1) - z}) {
      if (!contains(image)) orbit.push_back(std::move(image));
    }
  }
  return orbit;
}

ComplexValue j_invariant(const LambdaParam& l) {
  const ComplexValue& z = l.value();
  const ComplexValue one(1);
  const ComplexValue p = one - z + z * z;
  const ComplexValue q = z * (one - z);
  return ComplexValue(256) * p * p * p / (q * q);
}

bool same_curve(const LambdaParam& l1, const LambdaParam& l2) {
  for (const auto& z : s3_orbit(l1)) {
    if (is_close(z, l2.value())) return true;
  }
  return false;
}

LambdaParam lambda_of_quartic(const std::array<SpherePoint, 4>& roots) {
  return LambdaParam(numerics::cross_ratio_lambda(roots[0], roots[1], roots[2], roots[3]));
}

Pairing branch_set_pairing(const MobiusMap& m, std::span<const SpherePoint> points) {
  if (!m.is_involution()) throw Error(ErrorKind::NotInvolution, "map is not an involution");
  Pairing result;
  std::vector<bool> used(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    const SpherePoint image = m(points[i]);
    if (is_close(image, points[i])) {
      result.offending = points[i];
      return result;
    }
    std::size_t partner = points.size();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i && !used[j] && is_close(image, points[j])) {
        partner = j;
        break;
      }
    }
    if (partner == points.size()) {
      result.offending = points[i];
      return result;
    }
    used[i] = used[partner] = true;
    result.pairs.emplace_back(points[i], points[partner]);
  }
  return result;
}

}  // namespace ellfactors::legendre
