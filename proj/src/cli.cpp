#include "ellfactors/cli.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellfactors/constructions.hpp"
#include "ellfactors/cover.hpp"
#include "ellfactors/legendre.hpp"
#include "ellfactors/numerics.hpp"

namespace ellfactors::cli {

namespace {

namespace cs = constructions;
using json = nlohmann::json;
using cover::CoverModel;
using legendre::LambdaParam;
using legendre::LambdaTuple;
using numerics::ComplexValue;
using numerics::format;
using numerics::format_short;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Selection {
  std::string kind;
  std::string l1, l2, lambda, mu_value;
  std::vector<std::string> mu, chain, lambdas;
  bool component = false;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Output {
  json doc = json::object();
  std::vector<std::string> text;
  std::vector<Check> checks;

  void line(std::string s) { text.push_back(std::move(s)); }
  void check(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

std::string pad2(int n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

// ------------------------------------------------------------ argument values

ComplexValue complex_arg(const std::string& name, const std::string& text) {
  if (text.empty()) throw UsageError("--" + name + " is required");
  try {
    return numerics::parse_complex(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, name + ": " + e.what());
  }
}

LambdaParam lambda_arg(const std::string& name, const std::string& text) {
  const ComplexValue z = complex_arg(name, text);
  try {
    return LambdaParam(z);
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidDomain, name + " not in Delta_1 (value " + format_short(z) + ")");
  }
}

LambdaTuple tuple_arg(const std::string& prefix, const std::vector<std::string>& texts) {
  std::vector<LambdaParam> values;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    values.push_back(lambda_arg(prefix + std::to_string(i + 1), texts[i]));
  }
  return LambdaTuple(std::move(values));
}

// ------------------------------------------------------------ random draws

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  ComplexValue point() { return ComplexValue(box_(rng_), box_(rng_)); }

  // n values pairwise at distance >= 0.05 and away from 0 and 1, so draws stay
  // well-conditioned at the default tolerance.
  std::vector<ComplexValue> distinct(std::size_t n) {
    std::vector<ComplexValue> out;
    while (out.size() < n) {
      ComplexValue z = point();
      bool ok = numerics::abs(z) > 0.05 && numerics::abs(z - ComplexValue(1)) > 0.05;
      for (const auto& w : out) ok = ok && numerics::abs(z - w) > 0.05;
      if (ok) out.push_back(std::move(z));
    }
    return out;
  }

  LambdaTuple tuple(std::size_t n) {
    std::vector<LambdaParam> values;
    for (auto& z : distinct(n)) values.emplace_back(std::move(z));
    return LambdaTuple(std::move(values));
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> box_{-3.0, 3.0};
};

// ------------------------------------------------------------ constructions

struct Built {
  std::string name;
  json parameters = json::object();
  std::vector<std::string> parameter_text;
  std::vector<std::pair<std::string, ComplexValue>> curves;  // candidates for orbit tags
  std::optional<CoverModel> model;
  bool raw_disconnected = false;
  json equations = json::array();
  std::vector<std::string> equation_text;
  Output extra;  // construction-specific checks
};

void add_parameter(Built& b, const std::string& name, const ComplexValue& z) {
  b.parameters[name] = format(z);
  b.parameter_text.push_back(name + " = " + format_short(z));
}

void add_system(Built& b, const cs::ReducibleParams& p) {
  const auto system = cs::derive_equations_reducible(p);
  for (const auto& e : system.equations) {
    b.equations.push_back(e.render(system.s, true));
    b.equation_text.push_back(e.render(system.s, false));
  }
}

void add_reducible_parameters(Built& b, const cs::ReducibleParams& p) {
  add_parameter(b, "lambda", p.lambda());
  json mu = json::array();
  for (int k = 1; k <= p.s() - 2; ++k) {
    for (int t = 1; t <= 2; ++t) {
      mu.push_back(format(p.mu(k, t)));
      b.parameter_text.push_back("mu" + std::to_string(k) + std::to_string(t) + " = " +
                                 format_short(p.mu(k, t)));
    }
  }
  b.parameters["mu"] = mu;
  b.parameters["s"] = p.s();
}

cs::ReducibleParams reducible_from(const Selection& sel, Built& b) {
  if (!sel.chain.empty()) {
    if (!sel.mu.empty() || !sel.lambda.empty()) throw UsageError("--chain excludes --lambda/--mu");
    const LambdaTuple tuple = tuple_arg("l", sel.chain);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      b.curves.emplace_back("l" + std::to_string(i + 1), tuple[i].value());
    }
    return cs::solve_mu_chain(tuple);
  }
  if (sel.lambda.empty() || sel.mu.empty()) throw UsageError("give --lambda and --mu, or --chain");
  if (sel.mu.size() % 2 != 0) throw UsageError("--mu needs pairs: mu11,mu12,mu21,mu22,...");
  const LambdaParam lambda = lambda_arg("lambda", sel.lambda);
  std::vector<std::array<ComplexValue, 2>> mu;
  for (std::size_t i = 0; i < sel.mu.size(); i += 2) {
    mu.push_back({complex_arg("mu", sel.mu[i]), complex_arg("mu", sel.mu[i + 1])});
  }
  b.curves.emplace_back("lambda", lambda.value());
  return cs::ReducibleParams(lambda, std::move(mu));
}

Built build(const Selection& sel) {
  Built b;
  b.name = sel.kind;
  if (sel.kind == "genus2") {
    const LambdaParam l1 = lambda_arg("l1", sel.l1);
    const LambdaParam l2 = lambda_arg("l2", sel.l2);
    auto g2 = cs::build_genus2(l1, l2);
    add_parameter(b, "l1", l1);
    add_parameter(b, "l2", l2);
    add_parameter(b, "eta1", g2.equation.eta1);
    add_parameter(b, "eta2", g2.equation.eta2);
    b.curves = {{"l1", l1.value()}, {"l2", l2.value()}};
    b.equations.push_back(g2.equation.equation(true));
    b.equation_text.push_back(g2.equation.equation(false));
    b.model.emplace(std::move(g2.model));
  } else if (sel.kind == "reducible" || sel.kind == "raw") {
    const auto p = reducible_from(sel, b);
    add_reducible_parameters(b, p);
    add_system(b, p);
    if (sel.kind == "reducible") {
      b.model.emplace(cs::build_reducible(p));
    } else {
      CoverModel raw = cs::build_raw_fiber_product(p);
      b.raw_disconnected = !sel.component;
      b.model.emplace(sel.component ? raw.component() : raw);
      b.parameters["component"] = sel.component;
    }
  } else if (sel.kind == "irreducible") {
    const LambdaTuple tuple = tuple_arg("l", sel.lambdas);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      const std::string name = "l" + std::to_string(i + 1);
      add_parameter(b, name, tuple[i]);
      b.curves.emplace_back(name, tuple[i].value());
      b.equations.push_back("y" + std::to_string(i + 1) + "^2 = x * (x - 1) * (x - " + format(tuple[i]) + ")");
      b.equation_text.push_back("y" + std::to_string(i + 1) + "^2 = x * (x - 1) * (x - " +
                                format_short(tuple[i]) + ")");
    }
    b.model.emplace(cs::build_irreducible(tuple));
  } else if (sel.kind == "genus9") {
    const LambdaParam lambda = lambda_arg("lambda", sel.lambda);
    const ComplexValue mu = complex_arg("mu", sel.mu_value);
    auto g9 = cs::genus9_parameters(lambda, mu);
    add_reducible_parameters(b, g9.params);
    add_system(b, g9.params);
    b.curves.emplace_back("lambda", lambda.value());
    b.extra.check("pairing x -> lambda/x", g9.by_inversion.ok());
    b.extra.check("pairing x -> lambda(x-1)/(x-lambda)", g9.by_second.ok());
    b.extra.check("elliptic factor count 9", g9.elliptic_factor_count == 9,
                  std::to_string(g9.elliptic_factor_count));
    b.model.emplace(cs::build_reducible(g9.params));
  } else {
    throw UsageError("no construction selected");
  }
  return b;
}

json branch_table(const CoverModel& m, std::vector<std::string>& text) {
  json rows = json::array();
  for (const auto& d : m.branch()) {
    const std::string bits = gf2::to_bit_string(d.vector, m.rank());
    rows.push_back({{"point", format(d.point)}, {"vector", bits}});
    text.push_back("  " + format_short(d.point) + " -> " + bits);
  }
  return rows;
}

void header(const Built& b, Output& out) {
  out.doc["construction"] = {{"name", b.name}, {"parameters", b.parameters}};
  out.line("construction: " + b.name);
  for (const auto& p : b.parameter_text) out.line("  " + p);
}

Output cmd_construct(const Selection& sel) {
  Built b = build(sel);
  Output out = std::move(b.extra);
  header(b, out);
  const CoverModel& m = *b.model;
  const std::int64_t components = cover::component_count(m);
  const std::int64_t genus = components == 1 ? cover::total_genus(m) : cover::component_genus(m);
  out.doc["genus"] = genus;
  out.doc["components"] = components;
  out.doc["rank"] = m.rank();
  out.line("deck group rank: " + std::to_string(m.rank()));
  out.line("components: " + std::to_string(components));
  out.line(std::string(components == 1 ? "genus: " : "genus of each component: ") + std::to_string(genus));
  out.line("branch table:");
  out.doc["branch"] = branch_table(m, out.text);
  out.doc["equations"] = b.equations;
  out.line("equations:");
  for (const auto& e : b.equation_text) out.line("  " + e);
  return out;
}

Output cmd_decompose(const Selection& sel) {
  Built b = build(sel);
  if (b.raw_disconnected) {
    throw Error(ErrorKind::Disconnected,
                "the raw fiber product has " + std::to_string(cover::component_count(*b.model)) +
                    " components; rerun with --component to decompose one of them");
  }
  Output out = std::move(b.extra);
  header(b, out);
  const auto report = cover::decompose(*b.model);
  out.doc["genus"] = report.total_genus;
  out.doc["genus_sum"] = report.genus_sum;
  out.doc["kani_rosen_ok"] = report.kani_rosen_ok;
  out.line("total genus: " + std::to_string(report.total_genus));

  std::vector<ComplexValue> candidates;
  for (const auto& c : b.curves) candidates.push_back(c.second);
  json factors = json::array();
  for (const auto& f : report.factors) {
    const std::string bits = gf2::to_bit_string(f.subgroup.functional, b.model->rank());
    json row = {{"functional", bits},
                {"genus", f.curve.genus},
                {"equation", f.curve.equation(true)},
                {"deleted_infinity", f.curve.deleted_infinity()},
                {"orbit_of", nullptr}};
    std::string line = "  [" + bits + "] genus " + std::to_string(f.curve.genus) + ": " + f.curve.equation();
    if (f.curve.genus == 1) {
      const auto lambda = legendre::lambda_of_quartic(
          {f.curve.roots[0], f.curve.roots[1], f.curve.roots[2], f.curve.roots[3]});
      row["lambda"] = format(lambda.value());
      if (const auto idx = cs::identify_orbit(f.curve, candidates)) {
        row["orbit_of"] = b.curves[*idx].first;
        line += "  (orbit of " + b.curves[*idx].first + ")";
      } else {
        line += "  (lambda = " + format_short(lambda.value()) + ")";
      }
    }
    factors.push_back(std::move(row));
    out.line(line);
  }
  out.doc["factors"] = factors;
  out.line("factors: " + std::to_string(report.factors.size()) +
           ", genus sum: " + std::to_string(report.genus_sum));

  const auto& kr = report.kani_rosen;
  out.check("kani_rosen subgroups commute", kr.subgroups_commute);
  out.check("kani_rosen pairwise joins genus 0", kr.pairwise_joins_genus_zero,
            std::to_string(kr.failing_pairs.size()) + " of " + std::to_string(kr.pairs_checked) +
                " pairs fail");
  out.check("kani_rosen genus sum", kr.genus_sum_matches(),
            std::to_string(kr.genus_sum) + " vs " + std::to_string(kr.total_genus));
  return out;
}

// ------------------------------------------------------------ verify

struct VerifyOptions {
  std::string kind;
  int max = 24;
  std::string l1, l2;
  int r = 0;
  std::vector<std::string> lambdas;
  int s = 0;
  int samples = 10;
  int points = 20;
};

Output verify_identities(const VerifyOptions& v) {
  if (v.max < 3) throw UsageError("--max must be >= 3");
  Output out;
  for (int s = 3; s <= v.max; ++s) {
    const auto [lhs, rhs] = cover::reducible_genus_identity(s);
    out.check("reducible s=" + pad2(s), lhs == rhs, lhs.str() + " = " + rhs.str());
  }
  for (int r = 3; r <= v.max; ++r) {
    const auto [lhs, rhs] = cover::irreducible_genus_identity(r);
    out.check("irreducible r=" + pad2(r), lhs == rhs, lhs.str() + " = " + rhs.str());
  }
  out.doc["construction"] = {{"name", "identities"}, {"parameters", {{"max", v.max}}}};
  return out;
}

void family_output(const cs::FamilyReport& report, Output& out) {
  json factors = json::array();
  for (const auto& s : report.splits) {
    std::string pairs;
    for (const auto& [a, b] : s.pairing.pairs) pairs += " (" + format_short(a) + ", " + format_short(b) + ")";
    out.line("  [" + s.label + "] genus " + std::to_string(s.curve.genus) + " paired:" + pairs);
    out.check("pairing [" + s.label + "]", s.pairing.ok(),
              s.pairing.ok() ? pairs.substr(pairs.empty() ? 0 : 1) : "fails at " + format_short(*s.pairing.offending));
  }
  for (const auto& f : report.decomposition.factors) {
    factors.push_back({{"functional", gf2::to_bit_string(f.subgroup.functional, report.model.rank())},
                       {"genus", f.curve.genus},
                       {"equation", f.curve.equation(true)},
                       {"deleted_infinity", f.curve.deleted_infinity()},
                       {"orbit_of", nullptr}});
  }
  out.doc["factors"] = factors;
  out.doc["genus"] = report.decomposition.total_genus;
  out.doc["elliptic_factors"] = report.elliptic_factor_count;
  out.check("kani_rosen", report.decomposition.kani_rosen_ok);
  out.check("elliptic factors = genus", report.elliptic_factor_count == report.decomposition.total_genus,
            std::to_string(report.elliptic_factor_count) + " elliptic factors, genus " +
                std::to_string(report.decomposition.total_genus));
  out.line("elliptic factors: " + std::to_string(report.elliptic_factor_count));
}

json lambda_parameters(const std::vector<ComplexValue>& values, std::vector<std::string>& text) {
  json p = json::object();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string name = "l" + std::to_string(i + 1);
    p[name] = format(values[i]);
    text.push_back("  " + name + " = " + format_short(values[i]));
  }
  return p;
}

Output verify_family(const VerifyOptions& v) {
  Output out;
  const LambdaParam l1 = lambda_arg("l1", v.l1);
  const LambdaParam l2 = lambda_arg("l2", v.l2);
  out.line("family: " + v.kind);
  if (v.kind == "g5") {
    const auto report = cs::check_genus5_family(l1, l2);
    out.doc["construction"] = {{"name", "g5"}, {"parameters", lambda_parameters(report.lambdas, out.text)}};
    family_output(report, out);
    return out;
  }
  try {
    const auto report = cs::check_genus13_family(l1, l2);
    out.doc["construction"] = {{"name", "g13"}, {"parameters", lambda_parameters(report.lambdas, out.text)}};
    out.doc["residual"] = format(*report.residual);
    out.check("constraint", true, "residual " + format_short(*report.residual));
    family_output(report, out);
  } catch (const cs::ConstraintViolation& e) {
    out.doc["construction"] = {{"name", "g13"},
                               {"parameters", lambda_parameters({l1.value(), l2.value()}, out.text)}};
    out.doc["residual"] = format(e.residual());
    out.check("constraint", false, "residual " + format_short(e.residual()));
  }
  return out;
}

Output verify_bound(const VerifyOptions& v, Sampler& sampler) {
  Output out;
  const std::int64_t bound = cs::genus_upper_bound(v.r);
  const LambdaTuple tuple = v.lambdas.empty() ? sampler.tuple(static_cast<std::size_t>(v.r))
                                              : tuple_arg("l", v.lambdas);
  if (static_cast<int>(tuple.size()) != v.r) throw UsageError("--lambdas must list exactly r values");
  std::vector<ComplexValue> values;
  for (const auto& l : tuple) values.push_back(l.value());
  out.doc["construction"] = {{"name", "bound"}, {"parameters", lambda_parameters(values, out.text)}};
  out.doc["bound"] = bound;
  out.line("genus bound for r = " + std::to_string(v.r) + ": " + std::to_string(bound));

  const auto realized = cs::realize_genus_bound(tuple);
  out.doc["genus"] = realized.genus;
  if (realized.auxiliary_lambda) {
    out.doc["auxiliary_lambda"] = format(*realized.auxiliary_lambda);
    out.line("auxiliary curve: lambda = " + format_short(*realized.auxiliary_lambda));
  }
  out.check("realized genus = bound", realized.genus == bound,
            std::to_string(realized.genus) + " vs " + std::to_string(bound));

  // Every input curve must show up as a genus-1 quotient of the realization.
  const auto report = cover::decompose(cs::build_reducible(realized.params));
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool found = false;
    for (const auto& f : report.factors) {
      const auto idx = cs::identify_orbit(f.curve, {values[i]});
      found = found || idx.has_value();
    }
    out.check("l" + pad2(static_cast<int>(i + 1)) + " is a quotient", found);
  }
  out.check("kani_rosen", report.kani_rosen_ok);
  return out;
}

// w_alpha^2 evaluated straight from the linear relations t_c = -c t_1 - t_2,
// t_2 = -1 - mu_{s-2,2} t_1, without the factored form.
ComplexValue monomial_square(const cs::ReducibleParams& p, gf2::MonodromyVector alpha, const ComplexValue& z) {
  const int s = p.s();
  const ComplexValue t1 = z;
  const ComplexValue t2 = ComplexValue(-1) - p.mu(s - 2, 2) * z;
  auto t = [&](const ComplexValue& c) { return -(c * t1) - t2; };
  ComplexValue v(1);
  if (alpha.test(0)) v *= t1 * t2;
  if (alpha.test(1)) v *= t(ComplexValue(1)) * t(p.lambda());
  for (int k = 1; k <= s - 3; ++k) {
    if (alpha.test(k + 1)) v *= t(p.mu(k, 1)) * t(p.mu(k, 2));
  }
  if (alpha.test(s - 1)) v *= t(p.mu(s - 2, 1));
  return v;
}

void add_crosscheck(const cs::CrossCheckReport& report, const std::string& prefix, Output& out) {
  for (const auto& line : report.lines) {
    out.check(prefix + report.name + " " + line.label, line.ok(), line.detail);
  }
}

Output verify_crosscheck(const VerifyOptions& v, Sampler& sampler) {
  if (v.s < 3 || v.s > 16) throw UsageError("--s must lie in [3, 16]");
  if (v.samples < 1 || v.points < 1) throw UsageError("--samples and --points must be positive");
  Output out;
  out.doc["construction"] = {{"name", "crosscheck"},
                             {"parameters", {{"s", v.s}, {"samples", v.samples}, {"points", v.points}}}};
  for (int k = 0; k < v.samples; ++k) {
    const std::string prefix = "sample " + pad2(k + 1) + ": ";
    std::optional<cs::ReducibleParams> params;
    while (!params) {
      try {
        if (v.s == 3) {
          const LambdaTuple l = sampler.tuple(3);
          const ComplexValue mu = cs::solve_mu_genus3(l[0], l[1], l[2]);
          params.emplace(cs::genus3_parameters(l[0], l[2], mu));
          add_crosscheck(cs::crosscheck_genus3_closed_form(l[0], l[2], mu), prefix, out);
        } else if (v.s == 4) {
          const LambdaTuple l = sampler.tuple(2);
          params.emplace(cs::genus9_parameters(l[0], l[1].value()).params);
          add_crosscheck(cs::crosscheck_genus9_closed_form(l[0], l[1].value()), prefix, out);
        } else {
          const auto values = sampler.distinct(static_cast<std::size_t>(2 * v.s - 3));
          std::vector<std::array<ComplexValue, 2>> mu;
          for (std::size_t i = 1; i + 1 < values.size(); i += 2) mu.push_back({values[i], values[i + 1]});
          params.emplace(LambdaParam(values[0]), std::move(mu));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoValidRoot && e.kind() != ErrorKind::DegenerateParameter &&
            e.kind() != ErrorKind::InvalidDomain) {
          throw;
        }
      }
    }
    add_crosscheck(cs::crosscheck_general_closed_form(*params), prefix, out);

    const auto system = cs::derive_equations_reducible(*params);
    int failures = 0;
    std::string first_failure;
    for (const auto& e : system.equations) {
      for (int j = 0; j < v.points; ++j) {
        const ComplexValue z = sampler.point();
        if (!numerics::is_close(e.evaluate(z), monomial_square(*params, e.alpha, z))) {
          if (failures++ == 0) first_failure = e.render(v.s) + " at z = " + format_short(z);
        }
      }
    }
    out.check(prefix + "polynomial identities", failures == 0,
              std::to_string(system.equations.size()) + " equations x " + std::to_string(v.points) +
                  " points" + (failures == 0 ? "" : ", first failure " + first_failure));
  }
  return out;
}

// ------------------------------------------------------------ output

void emit(const Output& o, const RunConfig& config, std::ostream& out) {
  if (config.output_format == "json") {
    json doc = o.doc;
    json checks = json::object();
    for (const auto& c : o.checks) checks[c.name] = {{"pass", c.pass}, {"detail", c.detail}};
    doc["checks"] = checks;
    doc["pass"] = o.all_pass();
    out << doc.dump(2) << "\n";
    return;
  }
  for (const auto& l : o.text) out << l << "\n";
  std::size_t failed = 0;
  for (const auto& c : o.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    failed += c.pass ? 0 : 1;
  }
  if (!o.checks.empty()) {
    if (failed == 0) {
      out << "all " << o.checks.size() << " checks passed\n";
    } else {
      out << failed << " of " << o.checks.size() << " checks failed\n";
    }
  }
}

void add_selectors(CLI::App* parent, Selection& sel) {
  parent->require_subcommand(1);
  auto mark = [&sel](CLI::App* sub) {
    sub->fallthrough();
    sub->callback([&sel, sub] { sel.kind = sub->get_name(); });
  };

  auto* g2 = parent->add_subcommand("genus2", "genus-2 curve covering E_l1 and E_l2");
  g2->add_option("--l1", sel.l1, "first Legendre parameter")->required();
  g2->add_option("--l2", sel.l2, "second Legendre parameter")->required();
  mark(g2);

  for (const char* name : {"reducible", "raw"}) {
    auto* sub = parent->add_subcommand(
        name, std::string(name) == "raw" ? "full fiber product (two components)"
                                         : "component of the fiber product over pairs of branch values");
    sub->add_option("--lambda", sel.lambda, "Legendre parameter of the first curve");
    sub->add_option("--mu", sel.mu, "mu11,mu12,mu21,mu22,...")->delimiter(',');
    sub->add_option("--chain", sel.chain, "odd-length tuple l1,...,lr to realize")->delimiter(',');
    if (std::string(name) == "raw") sub->add_flag("--component", sel.component, "use one component");
    mark(sub);
  }

  auto* irr = parent->add_subcommand("irreducible", "irreducible fiber product of r curves");
  irr->add_option("--lambdas", sel.lambdas, "l1,...,lr")->delimiter(',')->required();
  mark(irr);

  auto* g9 = parent->add_subcommand("genus9", "genus-9 one-parameter family");
  g9->add_option("--lambda", sel.lambda)->required();
  g9->add_option("--mu", sel.mu_value)->required();
  mark(g9);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemann surfaces with Jacobians split into elliptic factors", "ellfactors"};
  app.require_subcommand(1);
  RunConfig config;
  app.add_option("--format", config.output_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--precision", config.precision_bits, "binary precision of the arithmetic")
      ->envname("ELLFACTORS_PRECISION")
      ->capture_default_str();
  app.add_option("--epsilon", config.epsilon, "equality tolerance")->capture_default_str();
  app.add_option("--seed", config.seed, "seed for randomized checks")->capture_default_str();

  Selection sel;
  auto* construct = app.add_subcommand("construct", "build a construction and print its equations");
  construct->fallthrough();
  add_selectors(construct, sel);
  auto* decompose = app.add_subcommand("decompose", "split the Jacobian into quotient Jacobians");
  decompose->fallthrough();
  add_selectors(decompose, sel);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run checks; exit 0 iff all pass");
  verify->fallthrough();
  verify->require_subcommand(1);
  auto mark = [&vo](CLI::App* sub) {
    sub->fallthrough();
    sub->callback([&vo, sub] { vo.kind = sub->get_name(); });
  };
  auto* ids = verify->add_subcommand("identities", "binomial genus identities");
  ids->add_option("--max", vo.max)->capture_default_str();
  mark(ids);
  for (const char* name : {"g5", "g13"}) {
    auto* sub = verify->add_subcommand(name, std::string(name) == "g5" ? "genus-5 family" : "genus-13 family");
    sub->add_option("--l1", vo.l1)->required();
    sub->add_option("--l2", vo.l2)->required();
    mark(sub);
  }
  auto* bound = verify->add_subcommand("bound", "genus bound for r curves and its realization");
  bound->add_option("--r", vo.r)->required();
  bound->add_option("--lambdas", vo.lambdas, "l1,...,lr (random if omitted)")->delimiter(',');
  mark(bound);
  auto* cross = verify->add_subcommand("crosscheck", "derived equations against closed forms");
  cross->add_option("--s", vo.s)->required();
  cross->add_option("--samples", vo.samples)->capture_default_str();
  cross->add_option("--points", vo.points, "random z per equation")->capture_default_str();
  mark(cross);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    numerics::configure({config.precision_bits, config.epsilon});
    Sampler sampler(config.seed);
    Output result;
    if (construct->parsed()) {
      result = cmd_construct(sel);
    } else if (decompose->parsed()) {
      result = cmd_decompose(sel);
    } else if (vo.kind == "identities") {
      result = verify_identities(vo);
    } else if (vo.kind == "g5" || vo.kind == "g13") {
      result = verify_family(vo);
    } else if (vo.kind == "bound") {
      result = verify_bound(vo, sampler);
    } else {
      result = verify_crosscheck(vo, sampler);
    }
    emit(result, config, out);
    return result.all_pass() ? kPass : kCheckFailure;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace ellfactors::cli
