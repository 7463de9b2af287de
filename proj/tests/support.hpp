#pragma once

#include "levy_chaos/models.hpp"
#include "levy_chaos/paths.hpp"
#include "levy_chaos/scalar.hpp"

#include <random>
#include <string_view>

namespace test_support {

using levy_chaos::Rational;

inline Rational Q(std::string_view text) { return levy_chaos::parse_rational(text); }

/// m_1..m_n drawn from a small rational lattice, sigma^2 zero.
inline levy_chaos::MomentVector<Rational> random_moments(std::mt19937_64& rng, unsigned n) {
  levy_chaos::MomentVector<Rational> mv;
  for (unsigned i = 0; i < n; ++i) mv.m.push_back(levy_chaos::random_rational(rng, -3, 3, 12));
  return mv;
}

inline levy_chaos::MomentVector<Rational> moments_of(std::initializer_list<const char*> values,
                                                    const char* sigma2 = "0") {
  levy_chaos::MomentVector<Rational> mv;
  for (const char* v : values) mv.m.push_back(Q(v));
  mv.sigma2 = Q(sigma2);
  return mv;
}

}  // namespace test_support
