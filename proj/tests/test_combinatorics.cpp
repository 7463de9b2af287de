#include "levy_chaos/combinatorics.hpp"
#include "levy_chaos/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace levy_chaos;

namespace {

// Compositions of m correspond to subsets of the m-1 gaps between m units.
std::set<std::vector<unsigned>> compositions_by_bitmask(unsigned k) {
  std::set<std::vector<unsigned>> out;
  for (unsigned m = 1; m <= k; ++m) {
    for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
      std::vector<unsigned> parts{1};
      for (unsigned gap = 0; gap + 1 < m; ++gap) {
        if (mask & (1u << gap)) {
          parts.push_back(1);
        } else {
          ++parts.back();
        }
      }
      out.insert(parts);
    }
  }
  return out;
}

std::set<std::vector<unsigned>> as_set(const std::vector<IndexTuple>& v) {
  std::set<std::vector<unsigned>> s;
  for (const auto& t : v) s.insert(t.parts());
  return s;
}

BigInt factorial_product(const std::vector<unsigned>& parts) {
  BigInt num = 1, den = 1;
  unsigned total = 0;
  for (unsigned p : parts) {
    total += p;
    for (unsigned r = 2; r <= p; ++r) den *= r;
  }
  for (unsigned r = 2; r <= total; ++r) num *= r;
  return num / den;
}

unsigned count_partitions(unsigned k, unsigned largest) {
  if (k == 0) return 1;
  unsigned c = 0;
  for (unsigned p = std::min(k, largest); p >= 1; --p) c += count_partitions(k - p, p);
  return c;
}

}  // namespace

TEST_SUITE("combinatorics") {
  TEST_CASE("index sets for small orders match the listed tuples") {
    const auto two = index_set(2);
    CHECK(as_set(two) == std::set<std::vector<unsigned>>{{1}, {2}, {1, 1}});
    CHECK(two == std::vector<IndexTuple>{{1}, {2}, {1, 1}});

    const auto three = index_set(3);
    CHECK(as_set(three) == std::set<std::vector<unsigned>>{{1, 1, 1}, {1, 1}, {1, 2}, {2, 1}, {1}, {2}, {3}});
    CHECK(three.size() == 7);

    CHECK(as_set(index_set(4)) == compositions_by_bitmask(4));
    CHECK(index_set(4).size() == 15);
  }

  TEST_CASE("index set sizes are 2^k - 1 and agree with brute force") {
    for (unsigned k = 1; k <= 12; ++k) {
      const auto set = index_set(k);
      CHECK(set.size() == (1u << k) - 1);
      if (k <= 10) CHECK(as_set(set) == compositions_by_bitmask(k));
    }
  }

  TEST_CASE("index sets are nested and canonically ordered") {
    for (unsigned k = 1; k < 12; ++k) {
      const auto small = index_set(k);
      auto big = index_set(k + 1);
      std::vector<IndexTuple> restricted;
      std::copy_if(big.begin(), big.end(), std::back_inserter(restricted), [k](const IndexTuple& t) { return t.sum() <= k; });
      CHECK(restricted == small);
      CHECK(std::is_sorted(big.begin(), big.end()));
      CHECK(std::adjacent_find(big.begin(), big.end()) == big.end());
    }
    // sum first, then length, then lexicographic
    CHECK(IndexTuple{3} < IndexTuple{1, 1, 1, 1});
    CHECK(IndexTuple{1, 2} < IndexTuple{1, 1, 1});
    CHECK(IndexTuple{1, 2} < IndexTuple{2, 1});
  }

  TEST_CASE("order cap") {
    CHECK(order_cap() == 12);
    try {
      (void)index_set(13);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == "combinatorics.order_too_large");
    }
  }

  TEST_CASE("exact-sum compositions") {
    CHECK(exact_sum_compositions(3, 2) == std::vector<IndexTuple>{{1, 2}, {2, 1}});
    CHECK(exact_sum_compositions(4, 1) == std::vector<IndexTuple>{{4}});
    CHECK(exact_sum_compositions(5, 5) == std::vector<IndexTuple>{{1, 1, 1, 1, 1}});
    CHECK(exact_sum_compositions(2, 3).empty());

    for (unsigned k = 1; k <= 8; ++k) {
      std::set<std::vector<unsigned>> united;
      for (unsigned n = 1; n <= k; ++n) {
        for (unsigned p = 1; p <= n; ++p) {
          for (const auto& t : exact_sum_compositions(n, p)) {
            CHECK(t.sum() == n);
            CHECK(t.size() == p);
            united.insert(t.parts());
          }
        }
      }
      CHECK(united == as_set(index_set(k)));
    }
  }

  TEST_CASE("partitions") {
    const auto three = partitions(3);
    REQUIRE(three.size() == 3);
    CHECK(three[0].parts == std::vector<unsigned>{3});
    CHECK(three[1].parts == std::vector<unsigned>{2, 1});
    CHECK(three[2].parts == std::vector<unsigned>{1, 1, 1});
    CHECK(three[1].multiplicities[0] == 1);
    CHECK(three[1].multiplicities[1] == 1);

    for (unsigned k = 1; k <= 12; ++k) {
      const auto ps = partitions(k);
      CHECK(ps.size() == count_partitions(k, k));
      const auto tuples = as_set(index_set(k));
      for (const auto& p : ps) {
        CHECK(p.total() == k);
        CHECK(std::is_sorted(p.parts.rbegin(), p.parts.rend()));
        CHECK(multiplicities_of(p.parts, k) == p.multiplicities);
        CHECK(tuples.count(p.parts) == 1);
      }
    }
    CHECK(partitions(4).size() == 5);
  }

  TEST_CASE("multinomial coefficients") {
    CHECK(multinomial({1, 1, 2}) == 12);
    CHECK(multinomial({7}) == 1);
    CHECK(multinomial({2, 1, 1}) == factorial_product({2, 1, 1}));
    CHECK(multinomial({2, 1, 1}) == 12);
    CHECK(multinomial({3, 0, 2}) == 10);

    std::vector<unsigned> parts{3, 1, 4, 1, 2};
    const BigInt reference = factorial_product(parts);
    std::sort(parts.begin(), parts.end());
    do {
      CHECK(multinomial(parts) == reference);
    } while (std::next_permutation(parts.begin(), parts.end()));

    // 30!/(10!10!10!) does not fit in 64 bits
    CHECK(multinomial({10, 10, 10}) == BigInt("5550996791340"));
    CHECK(multinomial({12, 12}) == binomial(24, 12));
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
  }
}
