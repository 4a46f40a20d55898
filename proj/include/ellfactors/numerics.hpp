#pragma once

// Complex arithmetic on the Riemann sphere with configurable binary
// precision, Mobius maps, cross-ratios and quadratic roots.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/mpfr.hpp>

#include "ellfactors/error.hpp"

namespace ellfactors::numerics {

using Real = boost::multiprecision::mpfr_float;

// Process-wide settings. Set once at start-up (CLI, test main); the
// arithmetic itself never mutates them.
struct Settings {
  unsigned precision_bits = 128;
  double epsilon = 1e-9;
};

void configure(const Settings& settings);
const Settings& settings();
Real epsilon();

class ComplexValue {
 public:
  ComplexValue() : re_(0), im_(0) {}
  ComplexValue(Real re, Real im = Real(0)) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexValue(int re) : re_(re), im_(0) {}
  ComplexValue(double re, double im = 0.0) : re_(re), im_(im) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }

  bool is_finite() const;

  ComplexValue& operator+=(const ComplexValue& o);
  ComplexValue& operator-=(const ComplexValue& o);
  ComplexValue& operator*=(const ComplexValue& o);
  // Throws NonFinite on division by an exact zero.
  ComplexValue& operator/=(const ComplexValue& o);

  friend ComplexValue operator+(ComplexValue a, const ComplexValue& b) { return a += b; }
  friend ComplexValue operator-(ComplexValue a, const ComplexValue& b) { return a -= b; }
  friend ComplexValue operator*(ComplexValue a, const ComplexValue& b) { return a *= b; }
  friend ComplexValue operator/(ComplexValue a, const ComplexValue& b) { return a /= b; }
  friend ComplexValue operator-(const ComplexValue& a) { return ComplexValue(-a.re_, -a.im_); }

 private:
  Real re_;
  Real im_;
};

ComplexValue I();
Real abs(const ComplexValue& z);
Real norm(const ComplexValue& z);  // |z|^2
ComplexValue conj(const ComplexValue& z);
ComplexValue sqrt(const ComplexValue& z);  // principal branch
ComplexValue pow(ComplexValue z, unsigned n);

// |a-b| <= eps * max(1, |a|, |b|)
bool is_close(const ComplexValue& a, const ComplexValue& b);
bool is_close(const ComplexValue& a, const ComplexValue& b, const Real& tol);
bool is_negligible(const ComplexValue& z, const Real& scale);

ComplexValue require_finite(ComplexValue z, std::string_view what);

// A point of the Riemann sphere. Infinity is a distinct state, never a
// large float.
class SpherePoint {
 public:
  SpherePoint(ComplexValue z);  // NOLINT(google-explicit-constructor)
  SpherePoint(int z) : SpherePoint(ComplexValue(z)) {}
  static SpherePoint infinity() { return SpherePoint(); }

  bool is_infinity() const { return !value_.has_value(); }
  const ComplexValue& value() const;

 private:
  SpherePoint() = default;
  std::optional<ComplexValue> value_;
};

bool is_close(const SpherePoint& a, const SpherePoint& b);

class MobiusMap {
 public:
  // x -> (a x + b) / (c x + d); throws SingularMobius when |ad - bc| <= eps.
  MobiusMap(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue d);
  static MobiusMap identity();

  const ComplexValue& a() const { return a_; }
  const ComplexValue& b() const { return b_; }
  const ComplexValue& c() const { return c_; }
  const ComplexValue& d() const { return d_; }

  SpherePoint operator()(const SpherePoint& p) const;
  MobiusMap inverse() const;
  // (f * g)(x) = f(g(x))
  friend MobiusMap operator*(const MobiusMap& f, const MobiusMap& g);

  bool is_identity() const;
  bool is_involution() const;

 private:
  ComplexValue a_, b_, c_, d_;
};

SpherePoint mobius_apply(const MobiusMap& m, const SpherePoint& p);

// The unique Mobius map sending p1 -> inf, p2 -> 0, p3 -> 1.
MobiusMap normalizing_map(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3);

// The value lambda with (p1,p2,p3,p4) -> (inf,0,1,lambda). Throws
// CollidingPoints if two of the points coincide within eps.
ComplexValue cross_ratio_lambda(const SpherePoint& p1, const SpherePoint& p2,
                                const SpherePoint& p3, const SpherePoint& p4);

// Roots of a x^2 + b x + c, ordered ((-b + sqrt(D)) / 2a, (-b - sqrt(D)) / 2a)
// with the principal square root; each computed by the cancellation-free
// route. Throws DegenerateLeadingCoefficient if |a| <= eps.
std::pair<ComplexValue, ComplexValue> solve_quadratic(const ComplexValue& a, const ComplexValue& b,
                                                      const ComplexValue& c);

// Candidate order used by every root-selecting solver: Im >= 0 first, then
// ascending real part, then ascending imaginary part.
std::array<ComplexValue, 2> selection_order(const std::pair<ComplexValue, ComplexValue>& roots);

// Literal grammar: `inf`, or an arithmetic expression over decimal numbers
// with + - * / , parentheses, sqrt(...), and a trailing `i` that makes the
// preceding term imaginary: `2`, `-1/2`, `3+4i`, `1/2-3/4i`, `(4+sqrt(2)i)/3`.
SpherePoint parse_point(std::string_view text);
ComplexValue parse_complex(std::string_view text);

// `re+imi` with 17 significant digits per component, or `inf`.
std::string format(const ComplexValue& z);
std::string format(const SpherePoint& p);
// Short human-readable form (about 10 significant digits, zero parts dropped).
std::string format_short(const ComplexValue& z);
std::string format_short(const SpherePoint& p);

std::ostream& operator<<(std::ostream& os, const ComplexValue& z);
std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

}  // namespace ellfactors::numerics
