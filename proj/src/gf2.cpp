#include "ellfactors/gf2.hpp"

#include "ellfactors/error.hpp"

namespace ellfactors::gf2 {

MonodromyVector indicator(std::span<const int> one_based_indices) {
  MonodromyVector v;
  for (int k : one_based_indices) v ^= MonodromyVector::unit(k - 1);
  return v;
}

std::string to_bit_string(MonodromyVector v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (v.test(k)) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

MonodromyVector from_bit_string(const std::string& s) {
  if (s.size() > static_cast<std::size_t>(kMaxRank)) {
    throw Error(ErrorKind::OutOfRange, "bit string longer than " + std::to_string(kMaxRank));
  }
  MonodromyVector v;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1') {
      v ^= MonodromyVector::unit(static_cast<int>(k));
    } else if (s[k] != '0') {
      throw Error(ErrorKind::Parse, "bit string '" + s + "' has a non-binary digit");
    }
  }
  return v;
}

bool lex_less(MonodromyVector a, MonodromyVector b) {
  const std::uint64_t diff = a.bits ^ b.bits;
  if (diff == 0) return false;
  const int first = std::countr_zero(diff);
  return b.test(first);
}

int rank_of(std::span<const MonodromyVector> vectors) {
  Subspace s(kMaxRank);
  for (auto v : vectors) s.insert(v);
  return s.dim();
}

MonodromyVector Subspace::reduce(MonodromyVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v.test(pivots_[i])) v ^= basis_[i];
  }
  return v;
}

MonodromyVector Subspace::coordinates(MonodromyVector v) const {
  if (!contains(v)) throw Error(ErrorKind::OutOfRange, "vector outside the subspace");
  MonodromyVector out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v.test(pivots_[i])) out ^= MonodromyVector::unit(static_cast<int>(i));
  }
  return out;
}

bool Subspace::contains(MonodromyVector v) const { return reduce(v).is_zero(); }

bool Subspace::insert(MonodromyVector v) {
  v = reduce(v);
  if (v.is_zero()) return false;
  const int pivot = std::countr_zero(v.bits);
  // Keep the echelon form reduced: clear the new pivot from existing rows.
  for (auto& row : basis_) {
    if (row.test(pivot)) row ^= v;
  }
  basis_.push_back(v);
  pivots_.push_back(pivot);
  return true;
}

Subspace Subspace::span(int ambient_rank, std::span<const MonodromyVector> generators) {
  Subspace s(ambient_rank);
  for (auto g : generators) s.insert(g);
  return s;
}

Subspace Subspace::from_basis(int ambient_rank, std::span<const MonodromyVector> basis) {
  Subspace s(ambient_rank);
  for (auto g : basis) {
    if (!s.insert(g)) throw Error(ErrorKind::DependentBasis, "subgroup generators are dependent");
  }
  return s;
}

Subspace Subspace::kernel(int ambient_rank, MonodromyVector functional) {
  if (functional.is_zero()) throw Error(ErrorKind::ZeroElement, "zero functional has no index-two kernel");
  Subspace s(ambient_rank);
  const int pivot = std::countr_zero(functional.bits);
  for (int k = 0; k < ambient_rank; ++k) {
    if (k == pivot) continue;
    MonodromyVector e = MonodromyVector::unit(k);
    if (functional.test(k)) e ^= MonodromyVector::unit(pivot);
    s.insert(e);
  }
  return s;
}

Subspace Subspace::whole(int ambient_rank) {
  Subspace s(ambient_rank);
  for (int k = 0; k < ambient_rank; ++k) s.insert(MonodromyVector::unit(k));
  return s;
}

Subspace join(const Subspace& a, const Subspace& b) {
  Subspace s = a;
  for (auto v : b.basis_) s.insert(v);
  return s;
}

}  // namespace ellfactors::gf2
