#include "levy_chaos/combinatorics.hpp"

#include "levy_chaos/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string_view>

namespace levy_chaos {
namespace {

unsigned env_cap(unsigned fallback) {
  const char* raw = std::getenv("LEVY_CHAOS_KMAX");
  if (raw == nullptr || *raw == '\0') return fallback;
  unsigned value = 0;
  const std::string_view text(raw);
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
    throw Error("combinatorics.bad_cap", "LEVY_CHAOS_KMAX must be a positive integer");
  }
  return value;
}

void check_order(unsigned k) {
  if (k == 0) throw Error("combinatorics.invalid", "order must be at least 1");
  if (k > order_cap()) {
    throw Error("combinatorics.order_too_large",
                "order too large: " + std::to_string(k) + " exceeds cap " + std::to_string(order_cap()));
  }
}

}  // namespace

unsigned order_cap() { return env_cap(12); }
unsigned float_ortho_cap() { return env_cap(8); }

IndexTuple::IndexTuple(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (unsigned p : parts_) {
    if (p == 0) throw Error("combinatorics.invalid", "tuple parts must be positive");
    sum_ += p;
  }
}

unsigned IndexTuple::max_part() const noexcept {
  return parts_.empty() ? 0 : *std::max_element(parts_.begin(), parts_.end());
}

std::string IndexTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::strong_ordering operator<=>(const IndexTuple& a, const IndexTuple& b) {
  if (auto c = a.sum_ <=> b.sum_; c != 0) return c;
  if (auto c = a.parts_.size() <=> b.parts_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                b.parts_.end());
}

unsigned Partition::total() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0u); }

std::vector<IndexTuple> exact_sum_compositions(unsigned n, unsigned p) {
  std::vector<IndexTuple> out;
  if (p == 0 || p > n) return out;
  std::vector<unsigned> current(p, 1);
  // Lexicographic enumeration: the last part absorbs the remainder.
  std::function<void(unsigned, unsigned)> fill = [&](unsigned pos, unsigned remaining) {
    if (pos + 1 == p) {
      current[pos] = remaining;
      out.emplace_back(current);
      return;
    }
    const unsigned slots_after = p - pos - 1;
    for (unsigned v = 1; v + slots_after <= remaining; ++v) {
      current[pos] = v;
      fill(pos + 1, remaining - v);
    }
  };
  fill(0, n);
  return out;
}

std::vector<IndexTuple> index_set(unsigned k) {
  check_order(k);
  std::vector<IndexTuple> out;
  out.reserve((std::size_t{1} << k) - 1);
  for (unsigned n = 1; n <= k; ++n) {
    for (unsigned p = 1; p <= n; ++p) {
      auto block = exact_sum_compositions(n, p);
      out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
    }
  }
  return out;
}

std::vector<unsigned> multiplicities_of(std::span<const unsigned> parts, unsigned k) {
  std::vector<unsigned> mult(k, 0);
  for (unsigned p : parts) {
    if (p == 0 || p > k) throw Error("combinatorics.invalid", "part out of range for multiplicities");
    ++mult[p - 1];
  }
  return mult;
}

std::vector<Partition> partitions(unsigned k) {
  check_order(k);
  std::vector<Partition> out;
  std::vector<unsigned> current;
  std::function<void(unsigned, unsigned)> fill = [&](unsigned remaining, unsigned largest) {
    if (remaining == 0) {
      out.push_back(Partition{current, multiplicities_of(current, k)});
      return;
    }
    for (unsigned v = std::min(remaining, largest); v >= 1; --v) {
      current.push_back(v);
      fill(remaining - v, v);
      current.pop_back();
    }
  };
  fill(k, k);
  return out;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt multinomial(std::span<const unsigned> parts) {
  if (parts.empty()) throw Error("combinatorics.invalid", "multinomial needs at least one part");
  // Product of binomials avoids the large intermediate factorial.
  BigInt result = 1;
  unsigned running = 0;
  for (unsigned p : parts) {
    running += p;
    result *= binomial(running, p);
  }
  return result;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace levy_chaos
