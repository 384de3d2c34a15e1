#include <doctest.h>

#include <set>

#include "spinglass/basis.hpp"
#include "spinglass/error.hpp"

using namespace spinglass;

namespace {

Pattern bits_of(const char* s) {
  Pattern p = 0;
  for (; *s; ++s) p = (p << 1) | static_cast<Pattern>(*s == '1');
  return p;
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(25, 2) == 300);
  CHECK(binomial(25, 3) == 2300);
  CHECK(binomial(8, 0) == 1);
  CHECK(binomial(8, 9) == 0);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("L=4 m=2 enumerates six ascending patterns") {
  const SectorBasis b(4, 2);
  REQUIRE(b.size() == 6);
  const char* expected[] = {"0011", "0101", "0110", "1001", "1010", "1100"};
  for (std::size_t k = 0; k < 6; ++k) CHECK(b[k] == bits_of(expected[k]));
  CHECK(b.rank(bits_of("0011")) == 0);
  CHECK(b.rank(bits_of("1100")) == 5);
  for (std::size_t k = 0; k < 6; ++k) CHECK(b.rank(b.unrank(k)) == k);
}

TEST_CASE("dimensions of named sectors") {
  CHECK(build_basis(25, 2)->size() == 300);
  const auto vac = build_basis(8, 0);
  REQUIRE(vac->size() == 1);
  CHECK(vac->states()[0] == 0);
  CHECK(build_basis(8, 8)->states()[0] == low_mask(8));
}

TEST_CASE("rank and unrank are inverse bijections for every sector up to L=16") {
  for (int L = 1; L <= 16; ++L) {
    for (int m = 0; m <= L; ++m) {
      const SectorBasis b(L, m);
      REQUIRE(b.size() == binomial(L, m));
      for (std::size_t k = 0; k < b.size(); ++k) {
        const Pattern p = b[k];
        if (popcount(p) != m || b.rank(p) != k || (k > 0 && !(b[k - 1] < p))) {
          FAIL("sector (" << L << "," << m << ") broken at k=" << k);
        }
      }
    }
  }
}

TEST_CASE("128-qubit patterns rank correctly") {
  const SectorBasis b(128, 1);
  REQUIRE(b.size() == 128);
  CHECK(b[127] == bit(127));
  CHECK(b.rank(bit(127)) == 127);
  const SectorBasis two(128, 2);
  CHECK(two.size() == 128 * 127 / 2);
  CHECK(two.rank(bit(126) | bit(127)) == two.size() - 1);
}

TEST_CASE("rank rejects wrong popcount and stray high bits") {
  const SectorBasis b(4, 2);
  CHECK_THROWS_AS(b.rank(bits_of("0111")), InvalidArgument);
  CHECK_THROWS_AS(b.rank(bits_of("10001")), InvalidArgument);
  CHECK_THROWS_AS(b.unrank(6), InvalidArgument);
}

TEST_CASE("invalid sectors and dimension budget") {
  CHECK_THROWS_AS(build_basis(4, 5), InvalidArgument);
  CHECK_THROWS_AS(build_basis(4, -1), InvalidArgument);
  CHECK_THROWS_AS(build_basis(129, 1), InvalidArgument);
  CHECK_THROWS_AS(build_basis(0, 0), InvalidArgument);
  CHECK_THROWS_AS(build_basis(40, 20), DimensionOverflow);
  CHECK_THROWS_AS(build_basis(10, 5, 100), DimensionOverflow);
}

TEST_CASE("pair partners swap opposite spins") {
  const SectorBasis b(4, 2);
  const auto k = b.rank(bits_of("0101"));
  const auto partner = b.pair_partner(k, 0, 1);
  REQUIRE(partner.has_value());
  CHECK(partner->pattern == bits_of("0110"));
  CHECK(partner->index == b.rank(bits_of("0110")));

  const auto both_up = b.rank(bits_of("0011"));
  CHECK_FALSE(b.pair_partner(both_up, 0, 1).has_value());
  CHECK(b.pair_partners(both_up, 0, 1).empty());
  CHECK(b.pair_partners(k, 0, 1).size() == 1);
  CHECK_THROWS_AS(b.pair_partner(k, 2, 2), InvalidArgument);
}

TEST_CASE("swap-connected element count matches an exhaustive scan") {
  for (int L = 2; L <= 9; ++L) {
    for (int m = 0; m <= L; ++m) {
      const SectorBasis b(L, m);
      std::size_t via_partners = 0;
      std::size_t brute = 0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (int i = 0; i < L; ++i) {
          for (int j = 0; j < L; ++j) {
            if (i == j) continue;
            via_partners += b.pair_partners(k, i, j).size();
            // scan every state for the swapped pattern
            const Pattern p = b[k];
            if (test_bit(p, i) == test_bit(p, j)) continue;
            const Pattern q = p ^ bit(i) ^ bit(j);
            for (std::size_t l = 0; l < b.size(); ++l) {
              if (b[l] == q) {
                ++brute;
                CHECK(popcount(q) == m);
              }
            }
          }
        }
      }
      // ordered (i, j): each state has m (L - m) up/down pairs, both orders
      CHECK(via_partners == brute);
      CHECK(brute == 2 * b.size() * static_cast<std::size_t>(m * (L - m)));
    }
  }
}

TEST_CASE("Gosper successor walks a sector") {
  Pattern p = low_mask(3);
  std::set<std::string> seen;
  for (int n = 0; n < 10; ++n) {
    seen.insert(to_bit_string(p, 5));
    p = next_same_popcount(p);
  }
  CHECK(seen.size() == 10);
  CHECK(to_bit_string(bit(0) | bit(3), 4) == "1001");
}
