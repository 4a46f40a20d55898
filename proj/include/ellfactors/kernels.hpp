#pragma once

// Data-parallel inner loops of the cover engine. Every kernel has an OpenMP
// version and a plain serial reference with identical output; tests compare
// the two and tools/bench_kernels times them.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ellfactors/gf2.hpp"

namespace ellfactors::kernels {

using gf2::MonodromyVector;
using gf2::Subspace;

struct FactorSlot {
  MonodromyVector functional;
  std::int64_t genus = 0;

  friend bool operator==(const FactorSlot&, const FactorSlot&) = default;
};

// Over all 2^n - 1 nonzero functionals f, the genus B_f/2 - 1 of the double
// cover cut out by f, where B_f counts branch vectors v with <f, v> = 1.
// Keeps genus >= 1, in lexicographic bit order of f. The cover must be
// connected (so B_f >= 2).
std::vector<FactorSlot> positive_genus_functionals(int rank, std::span<const MonodromyVector> branch);
std::vector<FactorSlot> positive_genus_functionals_serial(int rank,
                                                          std::span<const MonodromyVector> branch);

struct JoinAudit {
  std::size_t pairs_checked = 0;
  // Pairs (i, j), i < j, whose join has a quotient of positive genus,
  // in increasing (i, j) order.
  std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;

  friend bool operator==(const JoinAudit&, const JoinAudit&) = default;
};

JoinAudit audit_pairwise_joins(int rank, std::span<const MonodromyVector> branch,
                               std::span<const Subspace> subgroups);
JoinAudit audit_pairwise_joins_serial(int rank, std::span<const MonodromyVector> branch,
                                      std::span<const Subspace> subgroups);

// Quotient genus of the join of two subgroups, computed without building the
// joined Subspace. Inner step of both audit kernels.
std::int64_t join_quotient_genus(int rank, std::span<const MonodromyVector> branch, const Subspace& a,
                                 const Subspace& b);

// 1 - m + m B / 4 for the subgroup of index m; shared by both kernels and the
// cover module.
std::int64_t quotient_genus_raw(int rank, std::span<const MonodromyVector> branch,
                                const Subspace& subgroup);

}  // namespace ellfactors::kernels
