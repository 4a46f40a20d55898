#pragma once

// Builders that turn Legendre parameters into branched-cover models and
// explicit curve equations, plus the parameter solvers that make prescribed
// elliptic curves appear as quotients.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellfactors/cover.hpp"
#include "ellfactors/legendre.hpp"
#include "ellfactors/numerics.hpp"

namespace ellfactors::constructions {

using cover::CoverModel;
using cover::DecompositionReport;
using cover::FactorCurve;
using cover::IndexTwoSubgroup;
using gf2::MonodromyVector;
using legendre::LambdaParam;
using legendre::LambdaTuple;
using legendre::Pairing;
using numerics::ComplexValue;
using numerics::MobiusMap;
using numerics::SpherePoint;

// ConstraintViolated carrying the offending residual.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(ComplexValue residual, const std::string& what)
      : Error(ErrorKind::ConstraintViolated, what), residual_(std::move(residual)) {}
  const ComplexValue& residual() const { return residual_; }

 private:
  ComplexValue residual_;
};

// ---------------------------------------------------------------- genus two

// y^2 = (x^2 - 1)(x^2 - eta1)(x^2 - eta2)
struct Genus2Equation {
  ComplexValue eta1;
  ComplexValue eta2;

  // Throws InvalidDomain unless {+-1, +-sqrt(eta1), +-sqrt(eta2)} are six
  // distinct points.
  Genus2Equation(ComplexValue e1, ComplexValue e2);

  std::array<SpherePoint, 6> branch_points() const;
  std::string equation(bool precise = false) const;
};

struct Genus2Construction {
  Genus2Equation equation;
  CoverModel model;  // rank 2: inf, 0, 1 -> e1+e2, l1 -> e1, l2 -> e2
  // x -> (1-eta1)(x-eta2) / ((1-eta2)(x-eta1)); sends (1, eta1, eta2, inf, 0)
  // to (1, inf, 0, l1, l2).
  MobiusMap normalizer;
};

Genus2Construction build_genus2(const LambdaParam& l1, const LambdaParam& l2);

// --------------------------------------------------- reducible fiber product

// (lambda, mu_{1,1}, mu_{1,2}, ..., mu_{s-2,1}, mu_{s-2,2}), pairwise distinct
// and away from {0, 1}.
class ReducibleParams {
 public:
  // Throws InvalidDomain; needs at least one mu pair (s >= 3).
  ReducibleParams(LambdaParam lambda, std::vector<std::array<ComplexValue, 2>> mu);

  int s() const { return static_cast<int>(mu_.size()) + 2; }
  const LambdaParam& lambda() const { return lambda_; }
  // 1-based: mu(k, t) with 1 <= k <= s-2, t in {1, 2}.
  const ComplexValue& mu(int k, int t) const;
  const std::vector<std::array<ComplexValue, 2>>& mu_pairs() const { return mu_; }
  // lambda, mu_{1,1}, mu_{1,2}, ... in order.
  std::vector<ComplexValue> flat() const;

 private:
  LambdaParam lambda_;
  std::vector<std::array<ComplexValue, 2>> mu_;
};

// Rank s-1 model: inf, 0 -> a1; 1, lambda -> a2; mu_{k,*} -> a_{k+2} for
// k <= s-3; mu_{s-2,*} -> a1 + ... + a_{s-1}. Connected, genus 1 + 2^(s-2)(s-2).
CoverModel build_reducible(const ReducibleParams& p);

// Rank s model of the full fiber product of the s elliptic curves; two
// isomorphic components.
CoverModel build_raw_fiber_product(const ReducibleParams& p);

struct LinearFactor {
  ComplexValue root;
  int exponent = 1;
};

// w_alpha^2 = constant * prod (z - root)^exponent
struct CurveEquation {
  MonodromyVector alpha;
  ComplexValue constant;
  std::vector<LinearFactor> factors;

  ComplexValue evaluate(const ComplexValue& z) const;
  std::string render(int s, bool precise = false) const;
};

struct CurveSystem {
  int s = 0;
  std::vector<CurveEquation> equations;  // alpha over even-weight nonzero vectors, lex order

  const CurveEquation& at(MonodromyVector alpha) const;
};

// Eliminates t_2, ..., t_{2s-1} from the linear relations of the invariant
// monomials: each t is a linear form c (z - root) in z = t_1, and w_alpha^2 is
// the product of the forms selected by alpha. Constants are products of the
// leading coefficients. Throws DegenerateParameter if a form degenerates.
CurveSystem derive_equations_reducible(const ReducibleParams& p);

struct CrossCheckLine {
  std::string label;
  MonodromyVector alpha;
  bool constant_ok = false;
  bool roots_ok = false;
  std::string detail;

  bool ok() const { return constant_ok && roots_ok; }
};

struct CrossCheckReport {
  std::string name;
  std::vector<CrossCheckLine> lines;

  bool ok() const;
};

// Derived system against the closed forms for eta_0..eta_3, eta_{k,t} and
// K_alpha; the ill-formed K_alpha factor is read as (mu_{s-2,2} - mu_{k,2}).
CrossCheckReport crosscheck_general_closed_form(const ReducibleParams& p);

// s = 3 with (lambda, mu_{1,1}, mu_{1,2}) = (l1, mu, l3 mu): derived system
// against the three reference genus-3 equations, taken exactly as stated with no
// correction applied.
CrossCheckReport crosscheck_genus3_closed_form(const LambdaParam& l1, const LambdaParam& l3,
                                               const ComplexValue& mu);

// s = 4 with the genus-9 parameters: derived system against the seven
// closed-form equations (w7^2 = w3^2 w4^2).
CrossCheckReport crosscheck_genus9_closed_form(const LambdaParam& lambda, const ComplexValue& mu);

// ------------------------------------------------------------------ solvers

// Root of l2 l3 mu^2 - (l1 l2 + l2 l3 + l1 l3 - l1 - l3 + 1) mu + l1 l2 with
// (l1, mu, l3 mu) admissible and the quotients branched over {1, l1, mu, l3 mu}
// and {inf, 0, mu, l3 mu} isomorphic to E_{l2} and E_{l3}. Throws
// InvalidDomain, NoValidRoot.
ComplexValue solve_mu_genus3(const LambdaParam& l1, const LambdaParam& l2, const LambdaParam& l3);

// (l1, {mu, l3 mu}) as reducible parameters.
ReducibleParams genus3_parameters(const LambdaParam& l1, const LambdaParam& l3, const ComplexValue& mu);

struct Genus9Construction {
  ReducibleParams params;
  Pairing by_inversion;  // x -> lambda / x
  Pairing by_second;     // x -> lambda (x - 1) / (x - lambda)
  Pairing by_product;
  int elliptic_factor_count = 0;  // 6 elliptic quotients + 3 from the genus-3 one
};

// mu_{1,1} = mu, mu_{1,2} = lambda/mu, mu_{2,1} = lambda(mu-1)/(mu-lambda),
// mu_{2,2} = (mu-lambda)/(mu-1); verifies both involutions pair the 8 branch
// values. Throws InvalidDomain if (lambda, mu) not admissible,
// DegenerateParameter on collisions or a failed pairing.
Genus9Construction genus9_parameters(const LambdaParam& lambda, const ComplexValue& mu);

// 1 + 2^((r-2)/2) r for even r, 1 + 2^((r-3)/2)(r-1) for odd r. r >= 4.
std::int64_t genus_upper_bound(int r);

// For odd r = 2s-3: lambda = l1 and for j = 1..s-2 the pair
// (mu_{j,1}, l_{j+1} mu_{j,1}) solving the genus-3 quadratic with target
// l_{s-1+j}, so the quotients over {inf,0,mu_{j,*}} and {1,l1,mu_{j,*}} are
// E_{l_{j+1}} and E_{l_{s-1+j}}. Depth-first over root choices in selection
// order. Throws InvalidDomain, NoValidRoot.
ReducibleParams solve_mu_chain(const LambdaTuple& lambdas);

struct BoundRealization {
  ReducibleParams params;
  std::optional<ComplexValue> auxiliary_lambda;  // appended for even r
  std::int64_t genus = 0;
};

// A reducible construction of genus genus_upper_bound(r) containing all r
// curves; for even r one auxiliary curve (lambda = -1, then -2, -3, ... on
// collision or solver failure) is appended.
BoundRealization realize_genus_bound(const LambdaTuple& lambdas);

// ------------------------------------------------ irreducible fiber product

// Rank r model: l_j -> e_j; inf, 0, 1 -> e_1 + ... + e_r. r >= 3.
CoverModel build_irreducible(const LambdaTuple& lambdas);

struct SplitCertificate {
  std::string label;
  IndexTwoSubgroup factor;
  FactorCurve curve;
  MobiusMap involution;
  Pairing pairing;
};

struct FamilyReport {
  std::vector<ComplexValue> lambdas;
  CoverModel model;
  DecompositionReport decomposition;
  std::vector<SplitCertificate> splits;
  std::optional<ComplexValue> residual;
  int elliptic_factor_count = 0;

  bool ok() const;
};

// l3 = l1/l2; S0 (the genus-2 quotient) must be paired by x -> l1/x.
// Throws InvalidDomain.
FamilyReport check_genus5_family(const LambdaParam& l1, const LambdaParam& l2);

// l3 = l1/l2, l4 = l1(l2-1)/(l2-l1), constraint
// l2^2(1+l1) - 4 l1 l2 + l1(1+l1) = 0; the four genus-2 quotients must be
// paired by their involutions. Throws InvalidDomain, ConstraintViolation.
FamilyReport check_genus13_family(const LambdaParam& l1, const LambdaParam& l2);

ComplexValue genus13_constraint(const ComplexValue& l1, const ComplexValue& l2);

// Index of the first candidate S3-equivalent to a genus-1 factor, if any.
std::optional<std::size_t> identify_orbit(const FactorCurve& curve,
                                          const std::vector<ComplexValue>& candidates);

}  // namespace ellfactors::constructions
