#include "ellfactors/constructions.hpp"

#include <functional>
#include <sstream>

namespace ellfactors::constructions {

using numerics::format_short;
using numerics::is_close;

namespace {

const ComplexValue kOne(1);

std::string fmt(const ComplexValue& z, bool precise) {
  return precise ? numerics::format(z) : format_short(z);
}

std::uint64_t reverse_bits(std::uint64_t key, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    out = (out << 1U) | (key & 1U);
    key >>= 1U;
  }
  return out;
}

// Nonzero even-weight vectors of GF(2)^s in lexicographic order of alpha_1..alpha_s.
std::vector<MonodromyVector> even_vectors(int s) {
  std::vector<MonodromyVector> out;
  for (std::uint64_t key = 1; key < (std::uint64_t{1} << s); ++key) {
    const MonodromyVector v{reverse_bits(key, s)};
    if (v.weight() % 2 == 0) out.push_back(v);
  }
  return out;
}

MonodromyVector all_ones(int n) { return {(std::uint64_t{1} << n) - 1}; }

std::vector<SpherePoint> expand_roots(const CurveEquation& e) {
  std::vector<SpherePoint> out;
  for (const auto& f : e.factors) {
    for (int k = 0; k < f.exponent; ++k) out.emplace_back(f.root);
  }
  return out;
}

CrossCheckLine compare(const std::string& label, const CurveEquation& derived,
                       const CurveEquation& closed, int s) {
  CrossCheckLine line;
  line.label = label;
  line.alpha = derived.alpha;
  line.constant_ok = is_close(derived.constant, closed.constant);

  auto lhs = expand_roots(derived);
  const auto rhs = expand_roots(closed);
  std::vector<bool> used(lhs.size(), false);
  std::vector<SpherePoint> unmatched;
  for (const auto& r : rhs) {
    bool found = false;
    for (std::size_t i = 0; i < lhs.size() && !found; ++i) {
      if (!used[i] && is_close(lhs[i], r)) used[i] = found = true;
    }
    if (!found) unmatched.push_back(r);
  }
  line.roots_ok = unmatched.empty() && lhs.size() == rhs.size();

  std::ostringstream os;
  os << "alpha=" << gf2::to_bit_string(derived.alpha, s);
  if (!line.constant_ok) {
    os << "; constant derived " << format_short(derived.constant) << " vs closed form "
       << format_short(closed.constant);
  }
  if (!line.roots_ok) {
    os << "; closed-form roots without a derived match:";
    for (const auto& r : unmatched) os << " " << format_short(r);
    os << "; degrees " << lhs.size() << " vs " << rhs.size();
  }
  line.detail = os.str();
  return line;
}

CurveEquation closed(MonodromyVector alpha, ComplexValue constant, std::vector<ComplexValue> roots) {
  CurveEquation e;
  e.alpha = alpha;
  e.constant = std::move(constant);
  for (auto& r : roots) e.factors.push_back({std::move(r), 1});
  return e;
}

void require_nondegenerate(const ComplexValue& lead, const char* what) {
  if (numerics::abs(lead) <= numerics::epsilon()) {
    throw Error(ErrorKind::DegenerateParameter, std::string("linear form ") + what + " degenerates");
  }
}

// Orbit oracles for one genus-3 step: the quotients over {inf, 0, mu1, mu2}
// and {1, l1, mu1, mu2} must be E_M and E_T.
bool step_accepted(const ComplexValue& l1, const ComplexValue& target, const ComplexValue& multiplier,
                   const ComplexValue& mu1, const ComplexValue& mu2) {
  try {
    const auto over_zero = legendre::lambda_of_quartic({SpherePoint::infinity(), 0, mu1, mu2});
    const auto over_one = legendre::lambda_of_quartic({1, l1, mu1, mu2});
    return legendre::same_curve(over_zero, LambdaParam(multiplier)) &&
           legendre::same_curve(over_one, LambdaParam(target));
  } catch (const Error&) {
    return false;
  }
}

// Candidates for mu_1 of a step with target T and multiplier M, in selection order.
std::array<ComplexValue, 2> step_candidates(const ComplexValue& l1, const ComplexValue& target,
                                            const ComplexValue& multiplier) {
  const ComplexValue a = target * multiplier;
  const ComplexValue b =
      -(l1 * target + target * multiplier + l1 * multiplier - l1 - multiplier + kOne);
  const ComplexValue c = l1 * target;
  return numerics::selection_order(numerics::solve_quadratic(a, b, c));
}

}  // namespace

// ---------------------------------------------------------------- genus two

Genus2Equation::Genus2Equation(ComplexValue e1, ComplexValue e2)
    : eta1(numerics::require_finite(std::move(e1), "eta1")),
      eta2(numerics::require_finite(std::move(e2), "eta2")) {
  const auto pts = branch_points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (is_close(pts[i], pts[j])) {
        throw Error(ErrorKind::InvalidDomain, "genus-2 branch points " + format_short(pts[i]) +
                                                  " and " + format_short(pts[j]) + " coincide");
      }
    }
  }
}

std::array<SpherePoint, 6> Genus2Equation::branch_points() const {
  const ComplexValue r1 = numerics::sqrt(eta1);
  const ComplexValue r2 = numerics::sqrt(eta2);
  return {SpherePoint(1), SpherePoint(-1), SpherePoint(r1), SpherePoint(-r1), SpherePoint(r2),
          SpherePoint(-r2)};
}

std::string Genus2Equation::equation(bool precise) const {
  return "y^2 = (x^2 - 1) * (x^2 - " + fmt(eta1, precise) + ") * (x^2 - " + fmt(eta2, precise) + ")";
}

Genus2Construction build_genus2(const LambdaParam& l1, const LambdaParam& l2) {
  const LambdaTuple tuple{l1, l2};
  const ComplexValue& a = l1;
  const ComplexValue& b = l2;
  const ComplexValue eta1 = (a - kOne) / (b - kOne);
  const ComplexValue eta2 = b * (a - kOne) / (a * (b - kOne));
  Genus2Equation eq(eta1, eta2);

  const MonodromyVector e1 = MonodromyVector::unit(0);
  const MonodromyVector e2 = MonodromyVector::unit(1);
  CoverModel model(2, {{SpherePoint::infinity(), e1 ^ e2},
                       {0, e1 ^ e2},
                       {1, e1 ^ e2},
                       {a, e1},
                       {b, e2}});
  MobiusMap normalizer(kOne - eta1, -(kOne - eta1) * eta2, kOne - eta2, -(kOne - eta2) * eta1);
  return {std::move(eq), std::move(model), std::move(normalizer)};
}

// --------------------------------------------------- reducible fiber product

ReducibleParams::ReducibleParams(LambdaParam lambda, std::vector<std::array<ComplexValue, 2>> mu)
    : lambda_(std::move(lambda)), mu_(std::move(mu)) {
  if (mu_.empty()) throw Error(ErrorKind::InvalidDomain, "reducible construction needs s >= 3");
  std::vector<LambdaParam> all{lambda_};
  for (const auto& pair : mu_) {
    all.emplace_back(pair[0]);
    all.emplace_back(pair[1]);
  }
  LambdaTuple check(std::move(all));
}

const ComplexValue& ReducibleParams::mu(int k, int t) const {
  if (k < 1 || k > s() - 2 || t < 1 || t > 2) {
    throw Error(ErrorKind::OutOfRange, "mu index (" + std::to_string(k) + ", " + std::to_string(t) +
                                           ") out of range");
  }
  return mu_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t - 1)];
}

std::vector<ComplexValue> ReducibleParams::flat() const {
  std::vector<ComplexValue> out{lambda_.value()};
  for (const auto& pair : mu_) {
    out.push_back(pair[0]);
    out.push_back(pair[1]);
  }
  return out;
}

CoverModel build_reducible(const ReducibleParams& p) {
  const int s = p.s();
  const int rank = s - 1;
  auto a = [&](int i) { return i == s ? all_ones(rank) : MonodromyVector::unit(i - 1); };
  std::vector<cover::BranchDatum> branch{{SpherePoint::infinity(), a(1)},
                                         {0, a(1)},
                                         {1, a(2)},
                                         {p.lambda().value(), a(2)}};
  for (int k = 1; k <= s - 2; ++k) {
    const MonodromyVector v = k == s - 2 ? a(s) : a(k + 2);
    branch.push_back({p.mu(k, 1), v});
    branch.push_back({p.mu(k, 2), v});
  }
  return CoverModel(rank, std::move(branch));
}

CoverModel build_raw_fiber_product(const ReducibleParams& p) {
  const int s = p.s();
  auto e = [](int i) { return MonodromyVector::unit(i - 1); };
  std::vector<cover::BranchDatum> branch{{SpherePoint::infinity(), e(1) ^ e(s)},
                                         {0, e(1) ^ e(s)},
                                         {1, e(1) ^ e(2)},
                                         {p.lambda().value(), e(1) ^ e(2)}};
  for (int k = 1; k <= s - 2; ++k) {
    branch.push_back({p.mu(k, 1), e(k + 1) ^ e(k + 2)});
    branch.push_back({p.mu(k, 2), e(k + 1) ^ e(k + 2)});
  }
  return CoverModel(s, std::move(branch));
}

ComplexValue CurveEquation::evaluate(const ComplexValue& z) const {
  ComplexValue v = constant;
  for (const auto& f : factors) v *= numerics::pow(z - f.root, static_cast<unsigned>(f.exponent));
  return v;
}

std::string CurveEquation::render(int s, bool precise) const {
  std::ostringstream os;
  os << "w[" << gf2::to_bit_string(alpha, s) << "]^2 = " << fmt(constant, precise);
  for (const auto& f : factors) {
    os << " * (z - " << fmt(f.root, precise) << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

const CurveEquation& CurveSystem::at(MonodromyVector alpha) const {
  for (const auto& e : equations) {
    if (e.alpha == alpha) return e;
  }
  throw Error(ErrorKind::OutOfRange, "no equation for alpha = " + gf2::to_bit_string(alpha, s));
}

CurveSystem derive_equations_reducible(const ReducibleParams& p) {
  const int s = p.s();
  const ComplexValue& mu = p.mu(s - 2, 2);
  const ComplexValue& lambda = p.lambda();

  struct Form {
    ComplexValue lead;
    ComplexValue root;
  };
  // c0 + lead z = lead (z - root)
  auto form = [](const ComplexValue& c0, const ComplexValue& lead, const char* what) {
    require_nondegenerate(lead, what);
    return Form{lead, -c0 / lead};
  };

  // groups[i] holds the forms multiplied into w^2 when alpha_{i+1} = 1.
  std::vector<std::vector<Form>> groups(static_cast<std::size_t>(s));
  groups[0] = {Form{kOne, ComplexValue(0)}, form(ComplexValue(-1), -mu, "t2")};
  groups[1] = {form(kOne, mu - kOne, "t3"), form(kOne, mu - lambda, "t4")};
  for (int k = 1; k <= s - 3; ++k) {
    groups[static_cast<std::size_t>(k + 1)] = {form(kOne, mu - p.mu(k, 1), "t(k,1)"),
                                               form(kOne, mu - p.mu(k, 2), "t(k,2)")};
  }
  groups[static_cast<std::size_t>(s - 1)] = {form(kOne, mu - p.mu(s - 2, 1), "t(2s-1)")};

  CurveSystem system;
  system.s = s;
  for (const auto alpha : even_vectors(s)) {
    CurveEquation e;
    e.alpha = alpha;
    e.constant = kOne;
    for (int i = 0; i < s; ++i) {
      if (!alpha.test(i)) continue;
      for (const auto& f : groups[static_cast<std::size_t>(i)]) {
        e.constant *= f.lead;
        e.factors.push_back({f.root, 1});
      }
    }
    system.equations.push_back(std::move(e));
  }
  return system;
}

bool CrossCheckReport::ok() const {
  for (const auto& l : lines) {
    if (!l.ok()) return false;
  }
  return !lines.empty();
}

CrossCheckReport crosscheck_general_closed_form(const ReducibleParams& p) {
  const int s = p.s();
  const auto system = derive_equations_reducible(p);
  const ComplexValue& m = p.mu(s - 2, 2);
  const ComplexValue& lambda = p.lambda();

  const ComplexValue eta0 = -kOne / m;
  const ComplexValue eta1 = kOne / (kOne - m);
  const ComplexValue eta2 = kOne / (lambda - m);
  const ComplexValue eta3 = kOne / (p.mu(s - 2, 1) - m);
  auto eta_kt = [&](int k, int t) { return kOne / (p.mu(k, t) - m); };

  CrossCheckReport report;
  report.name = "general closed form, s = " + std::to_string(s);
  for (const auto& derived : system.equations) {
    const MonodromyVector alpha = derived.alpha;
    ComplexValue k_alpha = kOne;
    std::vector<ComplexValue> roots;
    if (alpha.test(0)) {
      k_alpha *= -m;
      roots.push_back(ComplexValue(0));
      roots.push_back(eta0);
    }
    if (alpha.test(1)) {
      k_alpha *= (m - kOne) * (m - lambda);
      roots.push_back(eta1);
      roots.push_back(eta2);
    }
    if (alpha.test(s - 1)) {
      k_alpha *= m - p.mu(s - 2, 1);
      roots.push_back(eta3);
    }
    for (int k = 1; k <= s - 3; ++k) {
      if (!alpha.test(k + 1)) continue;
      k_alpha *= (m - p.mu(k, 1)) * (m - p.mu(k, 2));
      roots.push_back(eta_kt(k, 1));
      roots.push_back(eta_kt(k, 2));
    }
    report.lines.push_back(compare("w[" + gf2::to_bit_string(alpha, s) + "]", derived,
                                   closed(alpha, k_alpha, std::move(roots)), s));
  }
  return report;
}

CrossCheckReport crosscheck_genus3_closed_form(const LambdaParam& l1, const LambdaParam& l3,
                                               const ComplexValue& mu) {
  const auto system = derive_equations_reducible(genus3_parameters(l1, l3, mu));
  const ComplexValue& a = l1;
  const ComplexValue& c = l3;
  const ComplexValue zero(0);

  // Reference forms with no correction applied; the labels w1, w2, w3 are attached to the
  // functionals 011, 101, 110 that the first two deck generators act on.
  const MonodromyVector w1 = gf2::from_bit_string("011");
  const MonodromyVector w2 = gf2::from_bit_string("101");
  const MonodromyVector w3 = gf2::from_bit_string("110");
  std::vector<std::pair<std::string, CurveEquation>> references;
  references.emplace_back("w1", closed(w1, mu * (c * mu - kOne) * (c * mu - a) * (c - kOne),
                                     {zero, kOne / (a - c * mu), kOne / (mu * (kOne - c))}));
  references.emplace_back("w2", closed(w2, -c * mu * mu * (c - kOne),
                                     {zero, -kOne / (c * mu), kOne / (kOne - c * mu)}));
  CurveEquation third = closed(w3, -c * mu * mu * (c * mu - kOne) * (c - kOne),
                               {-kOne / (c * mu), kOne / (mu * (kOne - c))});
  third.factors.push_back({zero, 2});
  references.emplace_back("w3", std::move(third));

  CrossCheckReport report;
  report.name = "genus-3 closed form";
  for (const auto& [label, eq] : references) {
    report.lines.push_back(compare(label, system.at(eq.alpha), eq, 3));
  }
  return report;
}

CrossCheckReport crosscheck_genus9_closed_form(const LambdaParam& lambda, const ComplexValue& mu) {
  const auto g9 = genus9_parameters(lambda, mu);
  const auto system = derive_equations_reducible(g9.params);
  const ComplexValue& l = lambda;
  const ComplexValue& m11 = g9.params.mu(1, 1);
  const ComplexValue& m12 = g9.params.mu(1, 2);
  const ComplexValue& m21 = g9.params.mu(2, 1);
  const ComplexValue& m22 = g9.params.mu(2, 2);
  const ComplexValue zero(0);

  const ComplexValue k1 = (m22 - m11) * (m22 - m12) * (m22 - m21);
  const ComplexValue k2 = (m22 - kOne) * (m22 - l) * (m22 - m21);
  const ComplexValue k3 = (m22 - kOne) * (m22 - l) * (m22 - m11) * (m22 - m12);
  const ComplexValue k4 = -m22 * (m22 - m21);
  const ComplexValue k5 = -m22 * (m22 - m11) * (m22 - m12);
  const ComplexValue k6 = -m22 * (m22 - kOne) * (m22 - l);
  const ComplexValue r11 = kOne / (m11 - m22);
  const ComplexValue r12 = kOne / (m12 - m22);
  const ComplexValue r21 = kOne / (m21 - m22);
  const ComplexValue r1 = kOne / (kOne - m22);
  const ComplexValue rl = kOne / (l - m22);
  const ComplexValue r0 = -kOne / m22;

  std::vector<std::pair<std::string, CurveEquation>> references;
  auto add = [&](const char* label, const char* bits, ComplexValue k, std::vector<ComplexValue> roots) {
    references.emplace_back(label, closed(gf2::from_bit_string(bits), std::move(k), std::move(roots)));
  };
  add("w1", "0011", k1, {r11, r12, r21});
  add("w2", "0101", k2, {r1, rl, r21});
  add("w3", "0110", k3, {r1, rl, r11, r12});
  add("w4", "1001", k4, {zero, r0, r21});
  add("w5", "1010", k5, {zero, r0, r11, r12});
  add("w6", "1100", k6, {zero, r0, r1, rl});
  add("w7", "1111", k3 * k4, {r1, rl, r11, r12, zero, r0, r21});

  CrossCheckReport report;
  report.name = "genus-9 closed form";
  for (const auto& [label, eq] : references) {
    report.lines.push_back(compare(label, system.at(eq.alpha), eq, 4));
  }
  return report;
}

// ------------------------------------------------------------------ solvers

ReducibleParams genus3_parameters(const LambdaParam& l1, const LambdaParam& l3, const ComplexValue& mu) {
  return ReducibleParams(l1, {{mu, l3.value() * mu}});
}

ComplexValue solve_mu_genus3(const LambdaParam& l1, const LambdaParam& l2, const LambdaParam& l3) {
  const LambdaTuple tuple{l1, l2, l3};
  for (const auto& mu : step_candidates(l1, l2, l3)) {
    try {
      genus3_parameters(l1, l3, mu);
    } catch (const Error&) {
      continue;
    }
    if (step_accepted(l1, l2, l3, mu, l3.value() * mu)) return mu;
  }
  throw Error(ErrorKind::NoValidRoot, "no root of the genus-3 quadratic gives admissible parameters");
}

Genus9Construction genus9_parameters(const LambdaParam& lambda, const ComplexValue& mu) {
  const LambdaTuple domain{lambda, LambdaParam(mu)};
  const ComplexValue& l = lambda;
  const ComplexValue m21 = l * (mu - kOne) / (mu - l);
  const ComplexValue m22 = (mu - l) / (mu - kOne);

  std::optional<ReducibleParams> params;
  try {
    params.emplace(lambda, std::vector<std::array<ComplexValue, 2>>{{mu, l / mu}, {m21, m22}});
  } catch (const Error& e) {
    throw Error(ErrorKind::DegenerateParameter, std::string("genus-9 parameters collide: ") + e.what());
  }

  const CoverModel model = build_reducible(*params);
  std::vector<SpherePoint> points;
  for (const auto& d : model.branch()) points.push_back(d.point);

  const MobiusMap inversion(ComplexValue(0), l, kOne, ComplexValue(0));
  const MobiusMap second(l, -l, kOne, -l);
  Genus9Construction out{*params, legendre::branch_set_pairing(inversion, points),
                         legendre::branch_set_pairing(second, points),
                         legendre::branch_set_pairing(second * inversion, points), 0};
  for (const auto* pairing : {&out.by_inversion, &out.by_second, &out.by_product}) {
    if (!pairing->ok()) {
      throw Error(ErrorKind::DegenerateParameter,
                  "involution fails on branch value " + format_short(*pairing->offending));
    }
  }

  for (const auto& f : cover::decompose(model).factors) {
    if (f.curve.genus == 1) {
      out.elliptic_factor_count += 1;
    } else if (f.curve.genus == 3 &&
               legendre::branch_set_pairing(inversion, f.curve.roots).ok() &&
               legendre::branch_set_pairing(second, f.curve.roots).ok()) {
      out.elliptic_factor_count += 3;
    }
  }
  return out;
}

std::int64_t genus_upper_bound(int r) {
  if (r < 4 || r > 60) throw Error(ErrorKind::OutOfRange, "genus bound needs 4 <= r <= 60");
  if (r % 2 == 0) return 1 + (std::int64_t{1} << ((r - 2) / 2)) * r;
  return 1 + (std::int64_t{1} << ((r - 3) / 2)) * (r - 1);
}

ReducibleParams solve_mu_chain(const LambdaTuple& lambdas) {
  const auto r = static_cast<int>(lambdas.size());
  if (r < 3 || r % 2 == 0) {
    throw Error(ErrorKind::InvalidDomain, "chain solver needs an odd tuple length >= 3, got " +
                                              std::to_string(r));
  }
  const int s = (r + 3) / 2;
  const ComplexValue& l1 = lambdas[0];
  std::vector<std::array<ComplexValue, 2>> chosen;

  // Depth-first: step j fixes mu_{j,*}; a step without an admissible root
  // sends the search back to the previous step's other root.
  std::function<bool(int)> search = [&](int j) {
    if (j > s - 2) return true;
    const ComplexValue& multiplier = lambdas[static_cast<std::size_t>(j)];
    const ComplexValue& target = lambdas[static_cast<std::size_t>(s - 2 + j)];
    for (const auto& mu1 : step_candidates(l1, target, multiplier)) {
      const ComplexValue mu2 = multiplier * mu1;
      chosen.push_back({mu1, mu2});
      bool admissible = true;
      try {
        ReducibleParams partial(lambdas[0], chosen);
      } catch (const Error&) {
        admissible = false;
      }
      if (admissible && step_accepted(l1, target, multiplier, mu1, mu2) && search(j + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(1)) {
    throw Error(ErrorKind::NoValidRoot, "no admissible choice of chain roots");
  }
  return ReducibleParams(lambdas[0], chosen);
}

BoundRealization realize_genus_bound(const LambdaTuple& lambdas) {
  const auto r = static_cast<int>(lambdas.size());
  const std::int64_t bound = genus_upper_bound(r);
  if (r % 2 == 1) {
    ReducibleParams params = solve_mu_chain(lambdas);
    const std::int64_t g = cover::total_genus(build_reducible(params));
    return {std::move(params), std::nullopt, g};
  }
  for (int k = 1; k <= 64; ++k) {
    const ComplexValue extra(-k);
    bool collides = false;
    for (const auto& l : lambdas) collides = collides || is_close(l.value(), extra);
    if (collides) continue;
    std::vector<LambdaParam> extended = lambdas.values();
    extended.emplace_back(extra);
    try {
      ReducibleParams params = solve_mu_chain(LambdaTuple(std::move(extended)));
      const std::int64_t g = cover::total_genus(build_reducible(params));
      if (g != bound) break;
      return {std::move(params), extra, g};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoValidRoot) throw;
    }
  }
  throw Error(ErrorKind::NoValidRoot, "no auxiliary curve completes the chain");
}

// ------------------------------------------------ irreducible fiber product

CoverModel build_irreducible(const LambdaTuple& lambdas) {
  const auto r = static_cast<int>(lambdas.size());
  if (r < 3) throw Error(ErrorKind::InvalidDomain, "irreducible construction needs r >= 3");
  const MonodromyVector ones = all_ones(r);
  std::vector<cover::BranchDatum> branch{{SpherePoint::infinity(), ones}, {0, ones}, {1, ones}};
  for (int j = 0; j < r; ++j) {
    branch.push_back({lambdas[static_cast<std::size_t>(j)].value(), MonodromyVector::unit(j)});
  }
  return CoverModel(r, std::move(branch));
}

bool FamilyReport::ok() const {
  if (!decomposition.kani_rosen_ok) return false;
  for (const auto& s : splits) {
    if (!s.pairing.ok()) return false;
  }
  return elliptic_factor_count == decomposition.total_genus;
}

namespace {

FamilyReport family_report(std::vector<ComplexValue> values,
                           const std::vector<std::pair<MonodromyVector, MobiusMap>>& involutions) {
  std::vector<LambdaParam> params;
  for (const auto& v : values) params.emplace_back(v);
  const LambdaTuple tuple(std::move(params));
  const int r = static_cast<int>(tuple.size());

  CoverModel model = build_irreducible(tuple);
  DecompositionReport decomposition = cover::decompose(model);
  FamilyReport report{std::move(values), std::move(model), std::move(decomposition), {}, std::nullopt, 0};

  for (const auto& [functional, map] : involutions) {
    const IndexTwoSubgroup h(functional);
    FactorCurve curve = cover::quotient_equation(report.model, h);
    Pairing pairing = legendre::branch_set_pairing(map, curve.roots);
    report.splits.push_back(
        {gf2::to_bit_string(functional, r), h, std::move(curve), map, std::move(pairing)});
  }

  for (const auto& f : report.decomposition.factors) {
    if (f.curve.genus == 1) report.elliptic_factor_count += 1;
  }
  for (const auto& s : report.splits) {
    if (s.pairing.ok() && s.curve.genus == 2) report.elliptic_factor_count += 2;
  }
  return report;
}

}  // namespace

FamilyReport check_genus5_family(const LambdaParam& l1, const LambdaParam& l2) {
  const ComplexValue& a = l1;
  const ComplexValue& b = l2;
  const ComplexValue c = a / b;
  const MobiusMap inversion(ComplexValue(0), a, kOne, ComplexValue(0));
  return family_report({a, b, c}, {{gf2::from_bit_string("111"), inversion}});
}

ComplexValue genus13_constraint(const ComplexValue& l1, const ComplexValue& l2) {
  return l2 * l2 * (kOne + l1) - ComplexValue(4) * l1 * l2 + l1 * (kOne + l1);
}

FamilyReport check_genus13_family(const LambdaParam& l1, const LambdaParam& l2) {
  const ComplexValue& a = l1;
  const ComplexValue& b = l2;
  const LambdaTuple domain{l1, l2};
  const ComplexValue c = a / b;
  const ComplexValue d = a * (b - kOne) / (b - a);

  const ComplexValue residual = genus13_constraint(a, b);
  if (numerics::abs(residual) >= numerics::epsilon()) {
    throw ConstraintViolation(residual, "constraint residual " + format_short(residual) +
                                            " exceeds tolerance");
  }

  const MobiusMap first(ComplexValue(0), a, kOne, ComplexValue(0));
  const MobiusMap second(a, -a, kOne, -a);
  const MobiusMap third(b, -b * c, kOne, -b);
  auto report = family_report({a, b, c, d}, {{gf2::from_bit_string("1110"), first},
                                             {gf2::from_bit_string("1101"), second},
                                             {gf2::from_bit_string("1011"), second * first},
                                             {gf2::from_bit_string("0111"), third}});
  report.residual = residual;
  return report;
}

std::optional<std::size_t> identify_orbit(const FactorCurve& curve,
                                          const std::vector<ComplexValue>& candidates) {
  if (curve.genus != 1 || curve.roots.size() != 4) return std::nullopt;
  const LambdaParam own = legendre::lambda_of_quartic(
      {curve.roots[0], curve.roots[1], curve.roots[2], curve.roots[3]});
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    try {
      if (legendre::same_curve(own, LambdaParam(candidates[i]))) return i;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace ellfactors::constructions
