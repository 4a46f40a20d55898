#include "ellfactors/cover.hpp"

#include <limits>
#include <sstream>

#include "ellfactors/kernels.hpp"

namespace ellfactors::cover {

namespace {

std::vector<MonodromyVector> vectors_of(const CoverModel& c) {
  std::vector<MonodromyVector> out;
  out.reserve(c.branch().size());
  for (const auto& d : c.branch()) out.push_back(d.vector);
  return out;
}

void require_connected(const CoverModel& c) {
  if (!c.connected()) {
    throw Error(ErrorKind::Disconnected, "cover has " + std::to_string(component_count(c)) +
                                             " components; use its component() instead");
  }
}

std::int64_t checked_int64(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::OutOfRange, "genus does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

// 1 - |V| + B |V| / 4 for a connected cover with deck group of order |V|.
std::int64_t riemann_hurwitz(int group_rank, std::int64_t branch_points) {
  const __int128 order = static_cast<__int128>(1) << group_rank;
  return checked_int64(1 - order + branch_points * order / 4);
}

}  // namespace

CoverModel::CoverModel(int rank, std::vector<BranchDatum> branch)
    : rank_(rank), branch_(std::move(branch)) {
  if (rank_ < 1 || rank_ > gf2::kMaxRank) {
    throw Error(ErrorKind::InvalidCover, "rank " + std::to_string(rank_) + " outside [1, 62]");
  }
  const std::uint64_t mask = (std::uint64_t{1} << rank_) - 1;
  MonodromyVector total;
  for (std::size_t i = 0; i < branch_.size(); ++i) {
    const auto& d = branch_[i];
    if (d.vector.is_zero()) {
      throw Error(ErrorKind::InvalidCover, "branch point " + numerics::format_short(d.point) +
                                               " carries the zero vector");
    }
    if ((d.vector.bits & ~mask) != 0) {
      throw Error(ErrorKind::InvalidCover, "vector outside GF(2)^" + std::to_string(rank_));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (numerics::is_close(branch_[j].point, d.point)) {
        throw Error(ErrorKind::CollidingPoints,
                    "branch point " + numerics::format_short(d.point) + " appears twice");
      }
    }
    total ^= d.vector;
  }
  if (!total.is_zero()) {
    throw Error(ErrorKind::InvalidCover, "monodromy vectors do not sum to zero");
  }
}

Subspace CoverModel::monodromy_span() const {
  Subspace s(rank_);
  for (const auto& d : branch_) s.insert(d.vector);
  return s;
}

bool CoverModel::connected() const { return monodromy_span().dim() == rank_; }

CoverModel CoverModel::component() const {
  const Subspace span = monodromy_span();
  std::vector<BranchDatum> branch;
  branch.reserve(branch_.size());
  for (const auto& d : branch_) branch.push_back({d.point, span.coordinates(d.vector)});
  return CoverModel(span.dim(), std::move(branch));
}

IndexTwoSubgroup::IndexTwoSubgroup(MonodromyVector f) : functional(f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroElement, "index-two subgroup needs a nonzero functional");
}

FactorCurve FactorCurve::hyperelliptic(std::vector<SpherePoint> branch_values) {
  FactorCurve curve;
  const auto b = static_cast<int>(branch_values.size());
  curve.genus = b >= 2 ? (b - 2) / 2 : 0;
  curve.roots = std::move(branch_values);
  return curve;
}

bool FactorCurve::deleted_infinity() const {
  for (const auto& p : roots) {
    if (p.is_infinity()) return true;
  }
  return false;
}

std::vector<ComplexValue> FactorCurve::finite_roots() const {
  std::vector<ComplexValue> out;
  for (const auto& p : roots) {
    if (!p.is_infinity()) out.push_back(p.value());
  }
  return out;
}

std::string FactorCurve::equation(bool precise) const {
  auto fmt = [precise](const ComplexValue& z) {
    return precise ? numerics::format(z) : numerics::format_short(z);
  };
  std::ostringstream os;
  os << "y^2 = " << fmt(leading);
  for (const auto& r : finite_roots()) os << " * (x - " << fmt(r) << ")";
  return os.str();
}

std::int64_t component_count(const CoverModel& c) {
  return std::int64_t{1} << (c.rank() - c.monodromy_span().dim());
}

std::int64_t total_genus(const CoverModel& c) {
  require_connected(c);
  return riemann_hurwitz(c.rank(), c.branch_count());
}

std::int64_t component_genus(const CoverModel& c) {
  return riemann_hurwitz(c.monodromy_span().dim(), c.branch_count());
}

std::int64_t fixed_point_count(const CoverModel& c, MonodromyVector h) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroElement, "the identity fixes every point");
  require_connected(c);
  const std::int64_t fiber = std::int64_t{1} << (c.rank() - 1);
  std::int64_t count = 0;
  for (const auto& d : c.branch()) {
    if (d.vector == h) count += fiber;
  }
  return count;
}

std::int64_t quotient_genus(const CoverModel& c, const Subspace& subgroup) {
  require_connected(c);
  if (subgroup.ambient_rank() != c.rank()) {
    throw Error(ErrorKind::InvalidCover, "subgroup lives in a different deck group");
  }
  const auto vectors = vectors_of(c);
  return kernels::quotient_genus_raw(c.rank(), vectors, subgroup);
}

std::int64_t quotient_genus(const CoverModel& c, const IndexTwoSubgroup& subgroup) {
  return quotient_genus(c, subgroup.subgroup(c.rank()));
}

std::int64_t quotient_genus(const CoverModel& c, std::span<const MonodromyVector> basis) {
  return quotient_genus(c, Subspace::from_basis(c.rank(), basis));
}

FactorCurve quotient_equation(const CoverModel& c, const IndexTwoSubgroup& subgroup) {
  require_connected(c);
  std::vector<SpherePoint> branch_values;
  for (const auto& d : c.branch()) {
    if (gf2::pairing(subgroup.functional, d.vector) == 1) branch_values.push_back(d.point);
  }
  return FactorCurve::hyperelliptic(std::move(branch_values));
}

KaniRosenDiagnostics kani_rosen_check(const CoverModel& c, std::span<const Subspace> subgroups) {
  KaniRosenDiagnostics diag;
  diag.total_genus = total_genus(c);
  for (const auto& s : subgroups) {
    // Subspaces of an abelian group always commute; the only way to fail
    // is to hand over a subgroup of some other group.
    if (s.ambient_rank() != c.rank()) {
      diag.subgroups_commute = false;
      continue;
    }
    diag.genus_sum += quotient_genus(c, s);
  }
  if (!diag.subgroups_commute) return diag;
  const auto vectors = vectors_of(c);
  const auto audit = kernels::audit_pairwise_joins(c.rank(), vectors, subgroups);
  diag.pairs_checked = audit.pairs_checked;
  diag.failing_pairs = audit.failing_pairs;
  diag.pairwise_joins_genus_zero = audit.failing_pairs.empty();
  return diag;
}

DecompositionReport decompose(const CoverModel& c) {
  require_connected(c);
  DecompositionReport report;
  report.total_genus = total_genus(c);
  const auto vectors = vectors_of(c);
  const auto slots = kernels::positive_genus_functionals(c.rank(), vectors);

  std::vector<Subspace> subgroups;
  subgroups.reserve(slots.size());
  report.factors.reserve(slots.size());
  for (const auto& slot : slots) {
    IndexTwoSubgroup h(slot.functional);
    report.factors.push_back({h, quotient_equation(c, h)});
    report.genus_sum += report.factors.back().curve.genus;
    subgroups.push_back(h.subgroup(c.rank()));
  }
  report.kani_rosen = kani_rosen_check(c, subgroups);
  report.kani_rosen_ok = report.kani_rosen.ok();
  return report;
}

namespace {

Integer binomial(int n, int k) {
  Integer b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

Integer power_of_two(int e) { return Integer(1) << e; }

}  // namespace

std::pair<Integer, Integer> reducible_genus_identity(int s) {
  if (s < 3) throw Error(ErrorKind::OutOfRange, "identity needs s >= 3");
  Integer lhs = 0;
  for (int k = 2; k <= s; k += 2) lhs += binomial(s, k) * (k - 1);
  Integer rhs = 1 + power_of_two(s - 2) * (s - 2);
  return {lhs, rhs};
}

std::pair<Integer, Integer> irreducible_genus_identity(int r) {
  if (r < 3) throw Error(ErrorKind::OutOfRange, "identity needs r >= 3");
  Integer lhs = 0;
  for (int k = 1; k <= r; k += 2) lhs += binomial(r, k) * (k + 1) / 2;
  for (int k = 4; k <= r; k += 2) lhs += binomial(r, k) * (k - 2) / 2;
  Integer rhs = 1 + power_of_two(r - 2) * (r - 1);
  return {lhs, rhs};
}

}  // namespace ellfactors::cover
