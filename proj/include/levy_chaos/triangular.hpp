#pragma once

#include "levy_chaos/error.hpp"
#include "levy_chaos/scalar.hpp"

#include <string>
#include <vector>

namespace levy_chaos {

/// Square lower-triangular matrix with 1-based (row, column) access; the
/// layout matches the a_{i,j} / b_{n,k} coefficient arrays.
template <Scalar S>
class LowerTriangular {
 public:
  LowerTriangular() = default;

  /// Identity of the given order.
  explicit LowerTriangular(unsigned order) : order_(order), data_(order * (order + 1) / 2, S(0)) {
    for (unsigned i = 1; i <= order; ++i) (*this)(i, i) = S(1);
  }

  unsigned order() const noexcept { return order_; }

  S& operator()(unsigned i, unsigned j) { return data_[index(i, j)]; }
  const S& operator()(unsigned i, unsigned j) const { return data_[index(i, j)]; }

  /// Entry (i, j) including the implicit zeros above the diagonal.
  S at(unsigned i, unsigned j) const { return j > i ? S(0) : data_[index(i, j)]; }

  bool is_unit() const {
    for (unsigned i = 1; i <= order_; ++i)
      if ((*this)(i, i) != S(1)) return false;
    return true;
  }

  friend LowerTriangular operator*(const LowerTriangular& x, const LowerTriangular& y) {
    if (x.order_ != y.order_) throw Error("ortho.order_mismatch", "triangular product of different orders");
    LowerTriangular out(x.order_);
    for (unsigned i = 1; i <= x.order_; ++i) {
      for (unsigned j = 1; j <= i; ++j) {
        S acc(0);
        for (unsigned l = j; l <= i; ++l) acc += x(i, l) * y(l, j);
        out(i, j) = acc;
      }
    }
    return out;
  }

  friend bool operator==(const LowerTriangular&, const LowerTriangular&) = default;

 private:
  std::size_t index(unsigned i, unsigned j) const {
    if (i == 0 || j == 0 || i > order_ || j > i) {
      throw Error("ortho.index", "triangular index (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") outside order " + std::to_string(order_));
    }
    return static_cast<std::size_t>(i - 1) * i / 2 + (j - 1);
  }

  unsigned order_ = 0;
  std::vector<S> data_;
};

}  // namespace levy_chaos
