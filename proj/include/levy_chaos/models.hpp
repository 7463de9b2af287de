#pragma once

#include "levy_chaos/error.hpp"
#include "levy_chaos/scalar.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace levy_chaos {

// Jump-size laws for compound Poisson components.
struct TwoPoint {
  Rational low;
  Rational p_low;
  Rational high;
  Rational p_high;
};
/// Size is +E or -E with E ~ Exponential(rate); positive with probability p_positive.
struct ExponentialSigned {
  Rational rate;
  Rational p_positive;
};
struct Deterministic {
  Rational value;
};
using JumpLaw = std::variant<TwoPoint, ExponentialSigned, Deterministic>;

// Jump parts. Gamma uses shape/rate: nu(dx) = a x^-1 e^{-bx} dx on x > 0.
struct GammaJumps {
  Rational shape;
  Rational rate;
};
struct CompoundPoisson {
  Rational intensity;
  JumpLaw law;
};
/// Explicit Levy-measure moments m_2..m_N. Taken as-is: the exponential
/// moment condition is the caller's responsibility.
struct SyntheticMoments {
  std::vector<Rational> higher;
};
struct NoJumps {};
using JumpPart = std::variant<NoJumps, GammaJumps, CompoundPoisson, SyntheticMoments>;

/// A Levy process given by its Brownian variance rate, its mean rate
/// m_1 = E[X_1] (the drift is folded in) and its jump part.
class LevyModel {
 public:
  LevyModel(Rational sigma2, Rational mean_rate, JumpPart jumps);

  /// Mean rate defaults to the jump part's own mean (a/b for Gamma,
  /// lambda E[J] for compound Poisson, 0 otherwise).
  static LevyModel with_natural_mean(Rational sigma2, JumpPart jumps, Rational extra_drift = 0);

  /// Parses e.g. "brownian:sigma=0.01+gamma:a=10,b=20".
  static LevyModel parse(std::string_view spec);

  const Rational& sigma2() const noexcept { return sigma2_; }
  const Rational& mean_rate() const noexcept { return mean_rate_; }
  const JumpPart& jumps() const noexcept { return jumps_; }

  /// Mean jump contribution per unit time (a/b, lambda E[J], 0 otherwise).
  Rational jump_mean_rate() const;
  /// Deterministic drift: mean_rate() - jump_mean_rate().
  Rational drift_rate() const { return mean_rate_ - jump_mean_rate(); }

  bool has_jumps() const noexcept { return !std::holds_alternative<NoJumps>(jumps_); }

  /// Canonical text form; parse(describe()) reproduces the model.
  std::string describe() const;

 private:
  Rational sigma2_;
  Rational mean_rate_;
  JumpPart jumps_;
};

/// m_1..m_N plus the Brownian variance rate. `adjusted` marks that m_2
/// already carries sigma^2.
template <Scalar S>
struct MomentVector {
  std::vector<S> m;  // m[i-1] == m_i
  S sigma2{0};
  bool adjusted = false;

  unsigned order() const noexcept { return static_cast<unsigned>(m.size()); }

  const S& operator()(unsigned i) const {
    if (i == 0 || i > m.size()) {
      throw Error("models.insufficient_moments",
                  "moment m_" + std::to_string(i) + " requested but only " +
                      std::to_string(m.size()) + " available");
    }
    return m[i - 1];
  }

  void require(unsigned n) const {
    if (n > m.size()) {
      throw Error("models.insufficient_moments",
                  "order " + std::to_string(n) + " needs m_1..m_" + std::to_string(n) +
                      " but only " + std::to_string(m.size()) + " available");
    }
  }

  friend bool operator==(const MomentVector&, const MomentVector&) = default;
};

/// Closed-form moments m_1..m_N of the model (exact).
MomentVector<Rational> moments(const LevyModel& model, unsigned n);

template <Scalar S>
MomentVector<S> convert_moments(const MomentVector<Rational>& mv) {
  MomentVector<S> out;
  out.sigma2 = from_rational<S>(mv.sigma2);
  out.adjusted = mv.adjusted;
  out.m.reserve(mv.m.size());
  for (std::size_t i = 0; i < mv.m.size(); ++i) {
    S value = from_rational<S>(mv.m[i]);
    if constexpr (std::same_as<S, double>) {
      if (!std::isfinite(value)) {
        throw Error("models.moment_undefined",
                    "moment m_" + std::to_string(i + 1) + " is not representable as a double");
      }
    }
    out.m.push_back(std::move(value));
  }
  if constexpr (std::same_as<S, double>) {
    if (!std::isfinite(out.sigma2)) throw Error("models.moment_undefined", "sigma^2 overflows");
  }
  return out;
}

template <Scalar S>
MomentVector<S> moments_as(const LevyModel& model, unsigned n) {
  return convert_moments<S>(moments(model, n));
}

/// m~_2 = m_2 + sigma^2, other moments unchanged. Refuses to run twice.
template <Scalar S>
MomentVector<S> sigma_adjust(MomentVector<S> mv) {
  if (mv.adjusted) throw Error("models.already_adjusted", "moment vector is already sigma-adjusted");
  if (mv.order() < 2 && is_zero(mv.sigma2)) {
    mv.adjusted = true;
    return mv;
  }
  mv.require(2);
  mv.m[1] += mv.sigma2;
  mv.adjusted = true;
  return mv;
}

}  // namespace levy_chaos
