#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ellfactors/error.hpp"
#include "ellfactors/gf2.hpp"
#include "test_support.hpp"

namespace {

using namespace ellfactors;
using namespace ellfactors::gf2;
using testsupport::Gen;

// Every element of the span, by enumerating all subset sums of the generators.
std::set<std::uint64_t> brute_span(const std::vector<MonodromyVector>& gens) {
  std::set<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gens.size()); ++mask) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i) & 1U) v ^= gens[i].bits;
    }
    out.insert(v);
  }
  return out;
}

TEST(Vector, PairingAndWeight) {
  const auto f = from_bit_string("1101");
  EXPECT_EQ(pairing(f, from_bit_string("1000")), 1);
  EXPECT_EQ(pairing(f, from_bit_string("1100")), 0);
  EXPECT_EQ(pairing(f, from_bit_string("0111")), 0);
  EXPECT_EQ(f.weight(), 3);
  const int idx[] = {1, 2, 4};
  EXPECT_EQ(indicator(idx), f);
}

TEST(Vector, BitStringRoundTrip) {
  Gen gen(31);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(1, 62);
    const MonodromyVector v{gen.bits(n)};
    EXPECT_EQ(from_bit_string(to_bit_string(v, n)), v);
  }
  EXPECT_THROW(from_bit_string("10a"), Error);
  EXPECT_EQ(to_bit_string(MonodromyVector::unit(0), 3), "100");
}

TEST(Vector, LexOrderMatchesStringOrder) {
  Gen gen(32);
  for (int k = 0; k < 500; ++k) {
    const int n = gen.integer(1, 12);
    const MonodromyVector a{gen.bits(n)}, b{gen.bits(n)};
    EXPECT_EQ(lex_less(a, b), to_bit_string(a, n) < to_bit_string(b, n));
  }
}

TEST(Subspace, SpanMatchesBruteForceProperty) {
  Gen gen(33);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(1, 8);
    std::vector<MonodromyVector> gens;
    for (int i = gen.integer(0, 6); i > 0; --i) gens.push_back({gen.bits(n)});
    const Subspace s = Subspace::span(n, gens);
    const auto members = brute_span(gens);
    EXPECT_EQ(std::size_t{1} << s.dim(), members.size());
    EXPECT_EQ(s.dim(), rank_of(gens));
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      EXPECT_EQ(s.contains({v}), members.count(v) == 1);
    }
  }
}

TEST(Subspace, CoordinatesReconstructMembers) {
  Gen gen(34);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(2, 10);
    std::vector<MonodromyVector> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(gen.vector(n));
    const Subspace s = Subspace::span(n, gens);
    for (const auto& g : gens) {
      const MonodromyVector coords = s.coordinates(g);
      MonodromyVector rebuilt;
      for (int i = 0; i < s.dim(); ++i) {
        if (coords.test(i)) rebuilt ^= s.basis()[static_cast<std::size_t>(i)];
      }
      EXPECT_EQ(rebuilt, g);
    }
  }
  Subspace line(3);
  line.insert(from_bit_string("100"));
  EXPECT_THROW((void)line.coordinates(from_bit_string("010")), Error);
}

TEST(Subspace, FromBasisRejectsDependentGenerators) {
  const std::vector<MonodromyVector> dep{from_bit_string("110"), from_bit_string("011"),
                                         from_bit_string("101")};
  try {
    (void)Subspace::from_basis(3, dep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DependentBasis);
  }
  EXPECT_EQ(Subspace::from_basis(3, std::span(dep).first(2)).dim(), 2);
}

TEST(Subspace, KernelOfFunctional) {
  Gen gen(35);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(1, 10);
    const MonodromyVector f = gen.vector(n);
    const Subspace ker = Subspace::kernel(n, f);
    EXPECT_EQ(ker.dim(), n - 1);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      EXPECT_EQ(ker.contains({v}), pairing(f, {v}) == 0);
    }
  }
  try {
    (void)Subspace::kernel(4, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroElement);
  }
}

TEST(Subspace, JoinIsSpanOfUnion) {
  Gen gen(36);
  for (int k = 0; k < 100; ++k) {
    const int n = gen.integer(1, 9);
    std::vector<MonodromyVector> ga, gb;
    for (int i = gen.integer(0, 4); i > 0; --i) ga.push_back({gen.bits(n)});
    for (int i = gen.integer(0, 4); i > 0; --i) gb.push_back({gen.bits(n)});
    const Subspace j = join(Subspace::span(n, ga), Subspace::span(n, gb));
    std::vector<MonodromyVector> all = ga;
    all.insert(all.end(), gb.begin(), gb.end());
    const auto members = brute_span(all);
    EXPECT_EQ(std::size_t{1} << j.dim(), members.size());
    for (auto v : members) EXPECT_TRUE(j.contains({v}));
  }
  EXPECT_EQ(Subspace::whole(5).dim(), 5);
}

}  // namespace
