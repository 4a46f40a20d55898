#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "ellfactors/constructions.hpp"
#include "test_support.hpp"

namespace {

using namespace ellfactors;
using namespace ellfactors::constructions;
using numerics::is_close;
using testsupport::Gen;
using testsupport::rel_error;
using testsupport::same_j;

const ComplexValue kOne(1);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Parse;
}

// Legendre value of four branch points, one of which may be infinite.
ComplexValue quartic_lambda(std::vector<SpherePoint> pts) {
  auto inf = std::find_if(pts.begin(), pts.end(), [](const SpherePoint& p) { return p.is_infinity(); });
  if (inf != pts.end()) {
    std::rotate(pts.begin(), inf, inf + 1);
    return testsupport::cross_ratio_inf(pts[1].value(), pts[2].value(), pts[3].value());
  }
  return testsupport::cross_ratio(pts[0].value(), pts[1].value(), pts[2].value(), pts[3].value());
}

// Random reducible parameters with s - 2 mu pairs.
ReducibleParams random_params(Gen& gen, int s) {
  const auto v = gen.distinct(static_cast<std::size_t>(2 * s - 3), 0.1);
  std::vector<std::array<ComplexValue, 2>> mu;
  for (int k = 0; k < s - 2; ++k) mu.push_back({v[static_cast<std::size_t>(1 + 2 * k)], v[static_cast<std::size_t>(2 + 2 * k)]});
  return ReducibleParams(LambdaParam(v[0]), mu);
}

// w_alpha^2 straight from the linear forms t_c = 1 + (mu - c) z and
// t_1 t_2 = z (-1 - mu z), mu = mu_{s-2,2}.
ComplexValue forms_product(const ReducibleParams& p, MonodromyVector alpha, const ComplexValue& z) {
  const int s = p.s();
  const ComplexValue mu = p.mu(s - 2, 2);
  auto t = [&](const ComplexValue& c) { return kOne + (mu - c) * z; };
  ComplexValue v(1);
  if (alpha.test(0)) v *= z * (ComplexValue(-1) - mu * z);
  if (alpha.test(1)) v *= t(kOne) * t(p.lambda().value());
  for (int k = 1; k <= s - 3; ++k) {
    if (alpha.test(k + 1)) v *= t(p.mu(k, 1)) * t(p.mu(k, 2));
  }
  if (alpha.test(s - 1)) v *= t(p.mu(s - 2, 1));
  return v;
}

LambdaTuple tuple_of(const std::vector<ComplexValue>& values) {
  std::vector<LambdaParam> out;
  for (const auto& v : values) out.emplace_back(v);
  return LambdaTuple(std::move(out));
}

// Multiset match of two point lists up to the library tolerance.
bool same_points(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    bool found = false;
    for (std::size_t i = 0; i < b.size() && !found; ++i) {
      if (!used[i] && is_close(p, b[i])) used[i] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

TEST(Genus2, EtaValuesAndExample) {
  const auto g = build_genus2(LambdaParam(ComplexValue(2)), LambdaParam(ComplexValue(-1)));
  EXPECT_TRUE(is_close(g.equation.eta1, ComplexValue(-0.5)));
  EXPECT_TRUE(is_close(g.equation.eta2, ComplexValue(0.25)));
  EXPECT_EQ(cover::total_genus(g.model), 2);
}

TEST(Genus2, QuotientsAndNormalizerProperty) {
  Gen gen(61);
  for (int k = 0; k < 100; ++k) {
    const auto v = gen.distinct(2, 0.1);
    const LambdaParam l1(v[0]), l2(v[1]);
    const Genus2Construction g = build_genus2(l1, l2);
    const ComplexValue& e1 = g.equation.eta1;
    const ComplexValue& e2 = g.equation.eta2;
    // x -> x^2 quotients of y^2 = (x^2-1)(x^2-eta1)(x^2-eta2).
    EXPECT_TRUE(same_j(testsupport::cross_ratio_inf(kOne, e1, e2), v[0]));
    EXPECT_TRUE(same_j(testsupport::cross_ratio(ComplexValue(0), kOne, e1, e2), v[1]));

    auto L = [&](const ComplexValue& x) { return (kOne - e1) * (x - e2) / ((kOne - e2) * (x - e1)); };
    EXPECT_LT(rel_error(L(kOne), kOne), 1e-9);
    EXPECT_LT(rel_error(L(ComplexValue(0)), v[1]), 1e-9);
    EXPECT_LT(rel_error((kOne - e1) / (kOne - e2), v[0]), 1e-9);
    EXPECT_TRUE(g.normalizer(e1).is_infinity());
    EXPECT_LT(rel_error(g.normalizer(SpherePoint(e2)).value(), ComplexValue(0)), 1e-9);
    EXPECT_LT(rel_error(g.normalizer(SpherePoint::infinity()).value(), v[0]), 1e-9);
    EXPECT_LT(rel_error(g.normalizer(SpherePoint(0)).value(), v[1]), 1e-9);

    const auto report = cover::decompose(g.model);
    ASSERT_EQ(report.factors.size(), 2U);
    std::vector<bool> hit(2, false);
    for (const auto& f : report.factors) {
      EXPECT_EQ(f.curve.genus, 1);
      const ComplexValue l = quartic_lambda(f.curve.roots);
      for (std::size_t i = 0; i < 2; ++i) hit[i] = hit[i] || same_j(l, v[i]);
    }
    EXPECT_TRUE(hit[0] && hit[1]);
  }
}

TEST(ReducibleParams, Validation) {
  const LambdaParam l(ComplexValue(2));
  EXPECT_EQ(kind_of([&] { ReducibleParams(l, {}); }), ErrorKind::InvalidDomain);
  EXPECT_EQ(kind_of([&] { ReducibleParams(l, {{ComplexValue(3), ComplexValue(2)}}); }), ErrorKind::InvalidDomain);
  EXPECT_EQ(kind_of([&] { ReducibleParams(l, {{ComplexValue(3), ComplexValue(1)}}); }), ErrorKind::InvalidDomain);
  const ReducibleParams p(l, {{ComplexValue(3), ComplexValue(4)}, {ComplexValue(5), ComplexValue(6)}});
  EXPECT_EQ(p.s(), 4);
  EXPECT_TRUE(is_close(p.mu(2, 1), ComplexValue(5)));
  EXPECT_EQ(kind_of([&] { (void)p.mu(3, 1); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { (void)p.mu(1, 3); }), ErrorKind::OutOfRange);
  EXPECT_EQ(p.flat().size(), 5U);
}

TEST(Reducible, GenusAndComponentsProperty) {
  Gen gen(62);
  for (int s = 3; s <= 10; ++s) {
    for (int k = 0; k < 5; ++k) {
      const ReducibleParams p = random_params(gen, s);
      const CoverModel model = build_reducible(p);
      EXPECT_EQ(model.rank(), s - 1);
      EXPECT_EQ(cover::total_genus(model), 1 + (std::int64_t{1} << (s - 2)) * (s - 2));
      const CoverModel raw = build_raw_fiber_product(p);
      EXPECT_EQ(cover::component_count(raw), 2);
      EXPECT_EQ(cover::component_genus(raw), cover::total_genus(model));
      for (int j = 0; j < s - 1; ++j) {
        EXPECT_EQ(cover::fixed_point_count(model, MonodromyVector::unit(j)), std::int64_t{1} << (s - 1));
      }
      const MonodromyVector ones{(std::uint64_t{1} << (s - 1)) - 1};
      EXPECT_EQ(cover::fixed_point_count(model, ones), std::int64_t{1} << (s - 1));
    }
  }
}

TEST(Irreducible, GenusTableAndFixedPoints) {
  Gen gen(63);
  const std::map<int, std::int64_t> table{{3, 5}, {4, 13}, {5, 33}};
  for (int r = 3; r <= 10; ++r) {
    const CoverModel m = build_irreducible(gen.tuple(static_cast<std::size_t>(r)));
    EXPECT_EQ(cover::component_count(m), 1);
    EXPECT_EQ(cover::total_genus(m), 1 + (std::int64_t{1} << (r - 2)) * (r - 1));
    if (table.count(r)) EXPECT_EQ(cover::total_genus(m), table.at(r));
    const MonodromyVector ones{(std::uint64_t{1} << r) - 1};
    EXPECT_EQ(cover::fixed_point_count(m, ones), 3 * (std::int64_t{1} << (r - 1)));
  }
  EXPECT_EQ(kind_of([&] { (void)build_irreducible(gen.tuple(2)); }), ErrorKind::InvalidDomain);
}

TEST(Equations, CountOrderAndFormsProperty) {
  Gen gen(64);
  for (int s = 3; s <= 8; ++s) {
    for (int k = 0; k < 4; ++k) {
      const ReducibleParams p = random_params(gen, s);
      const CurveSystem sys = derive_equations_reducible(p);
      ASSERT_EQ(sys.equations.size(), (std::size_t{1} << (s - 1)) - 1);
      for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        const auto& e = sys.equations[i];
        EXPECT_EQ(e.alpha.weight() % 2, 0);
        if (i > 0) EXPECT_TRUE(gf2::lex_less(sys.equations[i - 1].alpha, e.alpha));
        for (int t = 0; t < 20; ++t) {
          const ComplexValue z = gen.complex(2);
          EXPECT_LT(rel_error(e.evaluate(z), forms_product(p, e.alpha, z)), 1e-20);
        }
      }
    }
  }
}

TEST(Equations, RootsMapToQuotientBranchValuesProperty) {
  // z -> x = mu + 1/z carries the roots of w_alpha^2 onto the branch values of
  // the double cover cut out by the functional alpha (first s-1 bits).
  Gen gen(65);
  for (int s = 3; s <= 7; ++s) {
    for (int k = 0; k < 4; ++k) {
      const ReducibleParams p = random_params(gen, s);
      const ComplexValue mu = p.mu(s - 2, 2);
      const CoverModel model = build_reducible(p);
      for (const auto& e : derive_equations_reducible(p).equations) {
        std::vector<SpherePoint> mapped;
        for (const auto& f : e.factors) {
          for (int t = 0; t < f.exponent; ++t) {
            mapped.push_back(numerics::abs(f.root) == 0 ? SpherePoint::infinity()
                                                        : SpherePoint(mu + kOne / f.root));
          }
        }
        // Odd degree puts a branch point at z = inf, that is x = mu.
        EXPECT_EQ(mapped.size() % 2 == 1, e.alpha.test(s - 1));
        if (mapped.size() % 2 == 1) mapped.emplace_back(mu);
        const MonodromyVector functional{e.alpha.bits & ((std::uint64_t{1} << (s - 1)) - 1)};
        const FactorCurve curve = cover::quotient_equation(model, IndexTwoSubgroup(functional));
        EXPECT_TRUE(same_points(mapped, curve.roots)) << e.render(s);
      }
    }
  }
}

TEST(Equations, DegenerateFormRejected) {
  // mu_{1,1} = mu_{1,2} is excluded by the domain; degeneracy needs t coefficients
  // mu - c with c = mu, which the collision check already forbids.
  const LambdaParam l(ComplexValue(2));
  EXPECT_EQ(kind_of([&] { ReducibleParams(l, {{ComplexValue(3), ComplexValue(3)}}); }), ErrorKind::InvalidDomain);
}

TEST(CrossCheck, GeneralClosedFormProperty) {
  Gen gen(66);
  for (int s = 3; s <= 9; ++s) {
    const auto report = crosscheck_general_closed_form(random_params(gen, s));
    EXPECT_EQ(report.lines.size(), (std::size_t{1} << (s - 1)) - 1);
    EXPECT_TRUE(report.ok()) << report.name;
  }
}

TEST(CrossCheck, Genus9ClosedForm) {
  Gen gen(67);
  int done = 0;
  while (done < 20) {
    const auto v = gen.distinct(2, 0.1);
    try {
      const auto report = crosscheck_genus9_closed_form(LambdaParam(v[0]), v[1]);
      EXPECT_EQ(report.lines.size(), 7U);
      EXPECT_TRUE(report.ok());
      ++done;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegenerateParameter);
    }
  }
}

TEST(CrossCheck, Genus3ReportShape) {
  const LambdaParam l1(ComplexValue(2)), l2(ComplexValue(3)), l3(ComplexValue(4));
  const ComplexValue mu = solve_mu_genus3(l1, l2, l3);
  const auto report = crosscheck_genus3_closed_form(l1, l3, mu);
  ASSERT_EQ(report.lines.size(), 3U);
  EXPECT_EQ(report.lines[0].label, "w1");
  EXPECT_EQ(gf2::to_bit_string(report.lines[2].alpha, 3), "110");
  for (const auto& line : report.lines) EXPECT_EQ(line.detail.rfind("alpha=", 0), 0U);
}

TEST(Solvers, Genus3OraclesProperty) {
  Gen gen(68);
  for (int k = 0; k < 100; ++k) {
    const auto t = gen.tuple(3, 0.1);
    const ComplexValue mu = solve_mu_genus3(t[0], t[1], t[2]);
    const ComplexValue a = t[0].value(), b = t[1].value(), c = t[2].value();
    const ComplexValue residual =
        b * c * mu * mu - (a * b + b * c + a * c - a - c + kOne) * mu + a * b;
    EXPECT_LT(static_cast<double>(numerics::abs(residual)), 1e-20);
    EXPECT_TRUE(same_j(testsupport::cross_ratio(kOne, a, mu, c * mu), b));
    EXPECT_TRUE(same_j(testsupport::cross_ratio_inf(ComplexValue(0), mu, c * mu), c));

    const auto report = cover::decompose(build_reducible(genus3_parameters(t[0], t[2], mu)));
    ASSERT_EQ(report.factors.size(), 3U);
    std::vector<bool> hit(3, false);
    for (const auto& f : report.factors) {
      ASSERT_EQ(f.curve.genus, 1);
      const ComplexValue l = quartic_lambda(f.curve.roots);
      for (std::size_t i = 0; i < 3; ++i) hit[i] = hit[i] || same_j(l, t[i].value());
    }
    EXPECT_TRUE(hit[0] && hit[1] && hit[2]);
  }
}

TEST(Solvers, ChainOraclesProperty) {
  Gen gen(69);
  for (int k = 0; k < 40; ++k) {
    const int r = 2 * gen.integer(1, 4) + 1;
    const auto t = gen.tuple(static_cast<std::size_t>(r), 0.1);
    const ReducibleParams p = solve_mu_chain(t);
    const int s = (r + 3) / 2;
    ASSERT_EQ(p.s(), s);
    EXPECT_TRUE(is_close(p.lambda().value(), t[0].value()));
    for (int j = 1; j <= s - 2; ++j) {
      const ComplexValue m1 = p.mu(j, 1), m2 = p.mu(j, 2);
      const ComplexValue multiplier = t[static_cast<std::size_t>(j)].value();
      const ComplexValue target = t[static_cast<std::size_t>(s - 2 + j)].value();
      EXPECT_LT(rel_error(m2, multiplier * m1), 1e-25);
      EXPECT_TRUE(same_j(testsupport::cross_ratio_inf(ComplexValue(0), m1, m2), multiplier));
      EXPECT_TRUE(same_j(testsupport::cross_ratio(kOne, t[0].value(), m1, m2), target));
    }
    const auto report = cover::decompose(build_reducible(p));
    EXPECT_TRUE(report.kani_rosen_ok);
    if (r >= 5) EXPECT_EQ(report.total_genus, genus_upper_bound(r));
  }
  EXPECT_EQ(kind_of([&] { (void)solve_mu_chain(gen.tuple(4)); }), ErrorKind::InvalidDomain);
  EXPECT_EQ(kind_of([&] { (void)solve_mu_chain(gen.tuple(1)); }), ErrorKind::InvalidDomain);
}

TEST(Solvers, ChainSkipsRootThatCollidesWithEarlierStep) {
  // Choose the last target so one root of the second step equals mu_{1,1}.
  const ComplexValue l1(2), l2(3), l3(ComplexValue(-1, 1)), l4(-2);
  const ComplexValue m1 = solve_mu_chain(tuple_of({l1, l2, l4})).mu(1, 1);
  const ComplexValue target = m1 * (l1 - kOne) * (l3 - kOne) / ((l3 * m1 - l1) * (m1 - kOne));
  const LambdaTuple t = tuple_of({l1, l2, l3, l4, target});
  const ReducibleParams p = solve_mu_chain(t);
  EXPECT_TRUE(is_close(p.mu(1, 1), m1));
  EXPECT_FALSE(is_close(p.mu(2, 1), m1));
  EXPECT_TRUE(same_j(testsupport::cross_ratio(kOne, l1, p.mu(2, 1), p.mu(2, 2)), target));
}

TEST(Solvers, Genus9ParametersAndDegeneracy) {
  const auto g9 = genus9_parameters(LambdaParam(ComplexValue(3)), ComplexValue(-2, 1));
  EXPECT_EQ(g9.elliptic_factor_count, 9);
  EXPECT_TRUE(g9.by_inversion.ok() && g9.by_second.ok() && g9.by_product.ok());
  EXPECT_EQ(cover::total_genus(build_reducible(g9.params)), 9);
  // mu^2 = lambda makes mu_{1,1} = mu_{1,2}.
  EXPECT_EQ(kind_of([] { (void)genus9_parameters(LambdaParam(ComplexValue(4)), ComplexValue(2)); }),
            ErrorKind::DegenerateParameter);
  EXPECT_EQ(kind_of([] { (void)genus9_parameters(LambdaParam(ComplexValue(4)), ComplexValue(4)); }),
            ErrorKind::InvalidDomain);
}

TEST(Solvers, GenusUpperBoundValues) {
  const std::int64_t expected[] = {9, 9, 25, 25, 65, 65, 161};
  for (int r = 4; r <= 10; ++r) EXPECT_EQ(genus_upper_bound(r), expected[r - 4]);
  EXPECT_EQ(kind_of([] { (void)genus_upper_bound(3); }), ErrorKind::OutOfRange);
}

TEST(Solvers, RealizeBoundUsesAuxiliaryCurveForEvenLength) {
  Gen gen(70);
  for (int r = 4; r <= 8; ++r) {
    const auto t = gen.tuple(static_cast<std::size_t>(r), 0.1);
    const auto b = realize_genus_bound(t);
    EXPECT_EQ(b.genus, genus_upper_bound(r));
    EXPECT_EQ(b.auxiliary_lambda.has_value(), r % 2 == 0);
  }
  const LambdaTuple with_minus_one = tuple_of({ComplexValue(2), ComplexValue(-1), ComplexValue(3), ComplexValue(0.5, 1)});
  const auto b = realize_genus_bound(with_minus_one);
  ASSERT_TRUE(b.auxiliary_lambda.has_value());
  EXPECT_TRUE(is_close(*b.auxiliary_lambda, ComplexValue(-2)));
  EXPECT_EQ(b.genus, 9);
}

TEST(Families, Genus5PairsAndCount) {
  Gen gen(71);
  int done = 0;
  while (done < 30) {
    const auto v = gen.distinct(2, 0.1);
    std::optional<FamilyReport> found;
    try {
      found.emplace(check_genus5_family(LambdaParam(v[0]), LambdaParam(v[1])));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidDomain);  // l1/l2 collides with the domain
      continue;
    }
    ++done;
    const FamilyReport& rep = *found;
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.elliptic_factor_count, 5);
    EXPECT_LT(rel_error(rep.lambdas[2], v[0] / v[1]), 1e-25);
    ASSERT_EQ(rep.splits.size(), 1U);
    EXPECT_EQ(rep.splits[0].label, "111");
    EXPECT_EQ(rep.splits[0].curve.genus, 2);
    // The inversion x -> l1/x swaps inf and 0 and maps each branch value to another.
    for (const auto& [a, b] : rep.splits[0].pairing.pairs) {
      if (a.is_infinity() || b.is_infinity()) continue;
      EXPECT_LT(rel_error(a.value() * b.value(), v[0]), 1e-20);
    }
  }
}

TEST(Families, Genus13Example) {
  const ComplexValue l2 = (ComplexValue(4) + numerics::I() * numerics::sqrt(ComplexValue(2))) / ComplexValue(3);
  const auto rep = check_genus13_family(LambdaParam(ComplexValue(2)), LambdaParam(l2));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.elliptic_factor_count, 13);
  ASSERT_TRUE(rep.residual.has_value());
  EXPECT_LT(static_cast<double>(numerics::abs(*rep.residual)), 1e-12);
  const ComplexValue l3 = (ComplexValue(4) - numerics::I() * numerics::sqrt(ComplexValue(2))) / ComplexValue(3);
  const ComplexValue l4 = -numerics::I() * numerics::sqrt(ComplexValue(2));
  EXPECT_LT(rel_error(rep.lambdas[2], l3), 1e-12);
  EXPECT_LT(rel_error(rep.lambdas[3], l4), 1e-12);
  ASSERT_EQ(rep.splits.size(), 4U);
  for (const auto& s : rep.splits) EXPECT_TRUE(s.pairing.ok()) << s.label;
}

TEST(Families, Genus13ConstraintViolation) {
  try {
    (void)check_genus13_family(LambdaParam(ComplexValue(2)), LambdaParam(ComplexValue(3)));
    FAIL();
  } catch (const ConstraintViolation& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstraintViolated);
    EXPECT_LT(rel_error(e.residual(), ComplexValue(9)), 1e-25);
  }
}

TEST(Families, Genus13OnConstraintCurveProperty) {
  // l2 from the quadratic (1+l1) x^2 - 4 l1 x + l1(1+l1) = 0.
  Gen gen(72);
  int done = 0;
  while (done < 30) {
    const ComplexValue l1 = gen.distinct(1, 0.2)[0];
    const ComplexValue a = kOne + l1;
    const ComplexValue disc = ComplexValue(16) * l1 * l1 - ComplexValue(4) * a * l1 * a;
    const ComplexValue l2 = (ComplexValue(4) * l1 + numerics::sqrt(disc)) / (ComplexValue(2) * a);
    try {
      const auto rep = check_genus13_family(LambdaParam(l1), LambdaParam(l2));
      EXPECT_TRUE(rep.ok());
      EXPECT_EQ(rep.elliptic_factor_count, 13);
      ++done;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidDomain);
    }
  }
}

TEST(Families, IdentifyOrbit) {
  const ComplexValue l(ComplexValue(2, 1));
  const FactorCurve curve = FactorCurve::hyperelliptic({SpherePoint::infinity(), 0, 1, l});
  EXPECT_EQ(identify_orbit(curve, {ComplexValue(5), kOne / l}), std::optional<std::size_t>(1));
  EXPECT_FALSE(identify_orbit(curve, {ComplexValue(5)}).has_value());
  const FactorCurve g2 = FactorCurve::hyperelliptic({0, 1, 2, 3, 4, 5});
  EXPECT_FALSE(identify_orbit(g2, {ComplexValue(5)}).has_value());
}

}  // namespace
