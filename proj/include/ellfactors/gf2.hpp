#pragma once

// Vectors and subspaces of GF(2)^n, n <= 62, packed into machine words.
// Coordinate k (1-based in the math) lives in bit k-1.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ellfactors::gf2 {

inline constexpr int kMaxRank = 62;

struct MonodromyVector {
  std::uint64_t bits = 0;

  static constexpr MonodromyVector unit(int k) { return {std::uint64_t{1} << k}; }

  constexpr bool is_zero() const { return bits == 0; }
  constexpr bool test(int k) const { return ((bits >> k) & 1U) != 0; }
  constexpr int weight() const { return std::popcount(bits); }

  friend constexpr MonodromyVector operator^(MonodromyVector a, MonodromyVector b) {
    return {a.bits ^ b.bits};
  }
  constexpr MonodromyVector& operator^=(MonodromyVector o) {
    bits ^= o.bits;
    return *this;
  }
  friend constexpr bool operator==(MonodromyVector, MonodromyVector) = default;
};

// The GF(2) pairing <f, v> = sum f_k v_k.
constexpr int pairing(MonodromyVector f, MonodromyVector v) {
  return std::popcount(f.bits & v.bits) & 1;
}

// Indicator vector of a 1-based index set.
MonodromyVector indicator(std::span<const int> one_based_indices);

// `alpha_1 alpha_2 ... alpha_n` as characters.
std::string to_bit_string(MonodromyVector v, int n);
MonodromyVector from_bit_string(const std::string& s);

// Lexicographic order on bit strings alpha_1 ... alpha_n.
bool lex_less(MonodromyVector a, MonodromyVector b);

int rank_of(std::span<const MonodromyVector> vectors);

// A subspace in reduced echelon form (each basis vector owns a pivot bit
// that no other basis vector has).
class Subspace {
 public:
  explicit Subspace(int ambient_rank) : n_(ambient_rank) {}

  // Span of arbitrary (possibly dependent) generators.
  static Subspace span(int ambient_rank, std::span<const MonodromyVector> generators);
  // Throws DependentBasis if the generators are linearly dependent.
  static Subspace from_basis(int ambient_rank, std::span<const MonodromyVector> basis);
  // Kernel of a nonzero functional: an index-two subgroup.
  static Subspace kernel(int ambient_rank, MonodromyVector functional);
  static Subspace whole(int ambient_rank);

  int ambient_rank() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<MonodromyVector>& basis() const { return basis_; }

  // Returns false if v was already in the span.
  bool insert(MonodromyVector v);
  bool contains(MonodromyVector v) const;
  MonodromyVector reduce(MonodromyVector v) const;
  // Coordinates of a member of the span with respect to basis(): bit i is set
  // iff basis()[i] occurs. Throws OutOfRange if v is not in the span.
  MonodromyVector coordinates(MonodromyVector v) const;

  friend Subspace join(const Subspace& a, const Subspace& b);

 private:
  int n_;
  std::vector<MonodromyVector> basis_;
  std::vector<int> pivots_;
};

}  // namespace ellfactors::gf2
