#pragma once

#include "levy_chaos/scalar.hpp"

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace levy_chaos {

/// Highest expansion order accepted; 12 unless LEVY_CHAOS_KMAX is set.
unsigned order_cap();
/// Highest orthogonalization order in floating point; 8 unless LEVY_CHAOS_KMAX is set.
unsigned float_ortho_cap();

/// Tuple (i_1, ..., i_j) of positive integers naming an iterated integral.
/// i_1 belongs to the innermost (earliest) integrator.
///
/// Ordering is canonical: by sum, then by length, then lexicographic. Every
/// container keyed on tuples therefore iterates in the same order.
class IndexTuple {
 public:
  IndexTuple() = default;
  explicit IndexTuple(std::vector<unsigned> parts);
  IndexTuple(std::initializer_list<unsigned> parts) : IndexTuple(std::vector<unsigned>(parts)) {}

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  unsigned operator[](std::size_t i) const { return parts_[i]; }
  unsigned sum() const noexcept { return sum_; }
  unsigned max_part() const noexcept;

  std::string to_string() const;

  friend bool operator==(const IndexTuple& a, const IndexTuple& b) { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const IndexTuple& a, const IndexTuple& b);

 private:
  std::vector<unsigned> parts_;
  unsigned sum_ = 0;
};

/// Integer partition with its multiplicity vector; multiplicities[r-1] is
/// the number of parts equal to r.
struct Partition {
  std::vector<unsigned> parts;  // weakly decreasing
  std::vector<unsigned> multiplicities;

  unsigned total() const noexcept;
  unsigned length() const noexcept { return static_cast<unsigned>(parts.size()); }
};

/// All compositions with sum <= k, in canonical order. Size 2^k - 1.
std::vector<IndexTuple> index_set(unsigned k);

/// All length-p tuples of positive integers summing to n; empty when p > n.
std::vector<IndexTuple> exact_sum_compositions(unsigned n, unsigned p);

/// Partitions of k, parts weakly decreasing, listed in reverse lexicographic
/// order ((k) first, (1,...,1) last).
std::vector<Partition> partitions(unsigned k);

/// Multiplicities recomputed from parts (length = largest part).
std::vector<unsigned> multiplicities_of(std::span<const unsigned> parts, unsigned k);

/// (sum parts)! / prod(parts!), exact. Zero parts are allowed.
BigInt multinomial(std::span<const unsigned> parts);
inline BigInt multinomial(std::initializer_list<unsigned> parts) {
  return multinomial(std::span<const unsigned>(parts.begin(), parts.size()));
}

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

}  // namespace levy_chaos
