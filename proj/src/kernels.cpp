#include "ellfactors/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ellfactors/error.hpp"

namespace ellfactors::kernels {

namespace {

// Bit-reversal within n bits: enumerating keys in increasing order visits the
// functionals in lexicographic order of their strings alpha_1 ... alpha_n.
std::uint64_t reverse_bits(std::uint64_t key, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    out = (out << 1U) | (key & 1U);
    key >>= 1U;
  }
  return out;
}

std::int64_t double_cover_genus(MonodromyVector f, std::span<const MonodromyVector> branch) {
  std::int64_t b = 0;
  for (auto v : branch) b += gf2::pairing(f, v);
  return b / 2 - 1;
}

// XOR basis indexed by leading bit; lives on the stack so the pairwise audit
// does not allocate per pair.
class JoinBasis {
 public:
  void insert(std::uint64_t v) {
    while (v != 0) {
      const int top = 63 - std::countl_zero(v);
      if (rows_[top] == 0) {
        rows_[top] = v;
        ++dim_;
        return;
      }
      v ^= rows_[top];
    }
  }
  bool contains(std::uint64_t v) const {
    while (v != 0) {
      const int top = 63 - std::countl_zero(v);
      if (rows_[top] == 0) return false;
      v ^= rows_[top];
    }
    return true;
  }
  int dim() const { return dim_; }

 private:
  std::array<std::uint64_t, 64> rows_{};
  int dim_ = 0;
};

std::uint64_t functional_count(int rank) {
  if (rank < 1 || rank > 40) {
    throw Error(ErrorKind::OutOfRange, "functional enumeration needs 1 <= rank <= 40");
  }
  return std::uint64_t{1} << rank;
}

}  // namespace

std::int64_t quotient_genus_raw(int rank, std::span<const MonodromyVector> branch,
                                const Subspace& subgroup) {
  const int codim = rank - subgroup.dim();
  std::int64_t outside = 0;
  for (auto v : branch) outside += subgroup.contains(v) ? 0 : 1;
  const __int128 m = static_cast<__int128>(1) << codim;
  const __int128 mb = m * outside;
  if (mb % 4 != 0) {
    throw Error(ErrorKind::InvalidCover, "ramification count m*B not divisible by 4");
  }
  const __int128 g = 1 - m + mb / 4;
  if (g > std::numeric_limits<std::int64_t>::max() || g < 0) {
    throw Error(ErrorKind::OutOfRange, "quotient genus outside int64 or negative (disconnected?)");
  }
  return static_cast<std::int64_t>(g);
}

std::vector<FactorSlot> positive_genus_functionals_serial(int rank,
                                                          std::span<const MonodromyVector> branch) {
  const std::uint64_t total = functional_count(rank);
  std::vector<FactorSlot> out;
  for (std::uint64_t key = 1; key < total; ++key) {
    const MonodromyVector f{reverse_bits(key, rank)};
    const std::int64_t g = double_cover_genus(f, branch);
    if (g >= 1) out.push_back({f, g});
  }
  return out;
}

std::vector<FactorSlot> positive_genus_functionals(int rank, std::span<const MonodromyVector> branch) {
#ifdef _OPENMP
  const std::uint64_t total = functional_count(rank);
  std::vector<std::vector<FactorSlot>> per_thread;
#pragma omp parallel
  {
#pragma omp single
    per_thread.resize(static_cast<std::size_t>(omp_get_num_threads()));
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
    // Static schedule without chunk size: one contiguous block per thread,
    // in thread order, so concatenation preserves the key order.
#pragma omp for schedule(static)
    for (std::int64_t k = 1; k < static_cast<std::int64_t>(total); ++k) {
      const MonodromyVector f{reverse_bits(static_cast<std::uint64_t>(k), rank)};
      const std::int64_t g = double_cover_genus(f, branch);
      if (g >= 1) local.push_back({f, g});
    }
  }
  std::vector<FactorSlot> out;
  for (auto& chunk : per_thread) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
#else
  return positive_genus_functionals_serial(rank, branch);
#endif
}

namespace {

JoinBasis basis_of(const Subspace& s) {
  JoinBasis basis;
  for (auto v : s.basis()) basis.insert(v.bits);
  return basis;
}

std::int64_t join_genus(int rank, std::span<const MonodromyVector> branch, JoinBasis basis,
                        const Subspace& b) {
  for (auto v : b.basis()) {
    if (basis.dim() == rank) break;
    basis.insert(v.bits);
  }
  // A join that fills the whole group leaves every branch vector inside.
  std::int64_t outside = 0;
  if (basis.dim() < rank) {
    for (auto v : branch) outside += basis.contains(v.bits) ? 0 : 1;
  }
  const __int128 m = static_cast<__int128>(1) << (rank - basis.dim());
  return static_cast<std::int64_t>(1 - m + m * outside / 4);
}

std::vector<JoinBasis> bases_of(std::span<const Subspace> subgroups) {
  std::vector<JoinBasis> out;
  out.reserve(subgroups.size());
  for (const auto& s : subgroups) out.push_back(basis_of(s));
  return out;
}

}  // namespace

std::int64_t join_quotient_genus(int rank, std::span<const MonodromyVector> branch, const Subspace& a,
                                 const Subspace& b) {
  return join_genus(rank, branch, basis_of(a), b);
}

JoinAudit audit_pairwise_joins_serial(int rank, std::span<const MonodromyVector> branch,
                                      std::span<const Subspace> subgroups) {
  JoinAudit audit;
  const auto bases = bases_of(subgroups);
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
      ++audit.pairs_checked;
      if (join_genus(rank, branch, bases[i], subgroups[j]) != 0) {
        audit.failing_pairs.emplace_back(i, j);
      }
    }
  }
  return audit;
}

JoinAudit audit_pairwise_joins(int rank, std::span<const MonodromyVector> branch,
                               std::span<const Subspace> subgroups) {
#ifdef _OPENMP
  JoinAudit audit;
  const auto bases = bases_of(subgroups);
  const auto count = static_cast<std::int64_t>(subgroups.size());
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_thread;
  std::size_t checked = 0;
#pragma omp parallel reduction(+ : checked)
  {
#pragma omp single
    per_thread.resize(static_cast<std::size_t>(omp_get_num_threads()));
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
    // Row i holds count-1-i pairs; dynamic scheduling evens out the triangle.
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (std::size_t j = ui + 1; j < subgroups.size(); ++j) {
        ++checked;
        if (join_genus(rank, branch, bases[ui], subgroups[j]) != 0) {
          local.emplace_back(ui, j);
        }
      }
    }
  }
  audit.pairs_checked = checked;
  for (auto& chunk : per_thread) {
    audit.failing_pairs.insert(audit.failing_pairs.end(), chunk.begin(), chunk.end());
  }
  std::sort(audit.failing_pairs.begin(), audit.failing_pairs.end());
  return audit;
#else
  return audit_pairwise_joins_serial(rank, branch, subgroups);
#endif
}

}  // namespace ellfactors::kernels
