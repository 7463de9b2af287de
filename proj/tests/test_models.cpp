#include "levy_chaos/error.hpp"
#include "levy_chaos/models.hpp"
#include "support.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace levy_chaos;
using test_support::Q;

namespace {

template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Rational ipow(const Rational& x, unsigned i) {
  Rational r = 1;
  for (unsigned k = 0; k < i; ++k) r *= x;
  return r;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("gamma moments agree with quadrature of the Levy measure") {
    const double a = 10, b = 20;
    const auto model = LevyModel::parse("gamma:a=10,b=20");
    const auto mv = moments_as<double>(model, 12);
    boost::math::quadrature::exp_sinh<double> integrator;
    for (unsigned i = 2; i <= 12; ++i) {
      const double reference =
          integrator.integrate([&](double x) { return a * std::exp((i - 1.0) * std::log(x) - b * x); });
      CHECK(mv(i) == doctest::Approx(reference).epsilon(1e-10));
    }
    CHECK(moments(model, 2)(2) == Q("1/40"));
    CHECK(mv(2) == doctest::Approx(0.025));
    CHECK(moments(model, 1)(1) == Q("1/2"));
  }

  TEST_CASE("pure Brownian model has vanishing jump moments") {
    const auto mv = moments(LevyModel::parse("brownian:sigma=1"), 5);
    for (unsigned i = 1; i <= 5; ++i) CHECK(mv(i) == 0);
    CHECK(mv.sigma2 == 1);
  }

  TEST_CASE("compound Poisson moments match a Monte Carlo power-jump rate") {
    const auto model = LevyModel::parse("cpoisson:lambda=2,jump=const:3");
    const auto mv = moments(model, 3);
    CHECK(mv(2) == 18);
    CHECK(mv(3) == 54);

    // E[sum of i-th powers of the jumps on [0, t]] / t, sampled jump by jump.
    std::mt19937_64 rng(11);
    const double t = 2.0;
    std::poisson_distribution<int> count(2.0 * t);
    const int samples = 200000;
    for (unsigned i : {2u, 3u}) {
      double sum = 0, sum2 = 0;
      for (int s = 0; s < samples; ++s) {
        const double v = count(rng) * std::pow(3.0, i) / t;
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / samples;
      const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
      CHECK(std::abs(mean - to_double(mv(i))) < 3 * se);
    }
  }

  TEST_CASE("two-point jumps: moments follow the law's signed moments") {
    const auto model = LevyModel::parse("cpoisson:lambda=3,jump=point:-2:0.75:1");
    const auto mv = moments(model, 8);
    for (unsigned i = 2; i <= 8; ++i) {
      const Rational expected = Q("3") * (Q("0.75") * ipow(Rational(-2), i) + Q("0.25"));
      CHECK(mv(i) == expected);
      // negative side dominates: odd moments negative, even positive
      CHECK((i % 2 == 0 ? mv(i) > 0 : mv(i) < 0));
    }
    CHECK(mv(1) == Q("3") * (Q("-1.5") + Q("0.25")));
  }

  TEST_CASE("signed exponential jumps") {
    const auto model = LevyModel::parse("cpoisson:lambda=1,jump=exp:4:0.5");
    const auto mv = moments(model, 4);
    CHECK(mv(2) == Q("2/16"));
    CHECK(mv(3) == 0);
    CHECK(mv(4) == Q("24/256"));
  }

  TEST_CASE("even moments are nonnegative across the catalog") {
    for (const char* spec : {"gamma:a=3,b=7", "cpoisson:lambda=2,jump=point:-1:0.3:4", "cpoisson:lambda=5,jump=exp:2:0.1",
                             "brownian:sigma=0.2+gamma:a=10,b=20"}) {
      const auto mv = moments(LevyModel::parse(spec), 12);
      for (unsigned i = 2; i <= 12; i += 2) CHECK(mv(i) >= 0);
    }
  }

  TEST_CASE("sigma adjustment") {
    auto mv = moments(LevyModel::parse("gamma:a=10,b=20"), 3);
    auto adj = sigma_adjust(mv);
    CHECK(adj.m == mv.m);
    CHECK(adj.adjusted);

    mv.sigma2 = Q("0.0001");
    CHECK(sigma_adjust(mv)(2) == Q("0.0251"));
    const auto with_brownian = moments(LevyModel::parse("brownian:sigma=0.01+gamma:a=10,b=20"), 2);
    CHECK(sigma_adjust(with_brownian)(2) == Q("0.0251"));

    const auto brownian = sigma_adjust(moments(LevyModel::parse("brownian:sigma=1"), 3));
    CHECK(brownian.m == std::vector<Rational>{0, 1, 0});

    CHECK(error_code([&] { (void)sigma_adjust(adj); }) == "models.already_adjusted");

    MomentVector<Rational> first_only;
    first_only.m = {Q("0.5")};
    CHECK(sigma_adjust(first_only).adjusted);
    first_only.sigma2 = 1;
    CHECK(error_code([&] { (void)sigma_adjust(first_only); }) == "models.insufficient_moments");
  }

  TEST_CASE("decimal and fraction literals are exact") {
    CHECK(Q("0.25") == Rational(1, 4));
    CHECK(Q("-0.029") == Rational(-29, 1000));
    CHECK(Q("007") == 7);
    CHECK(Q("0") == 0);
    CHECK(Q("1e-4") == Rational(1, 10000));
    CHECK(Q("2.5E+3") == 2500);
    CHECK(Q("08/016") == Rational(1, 2));
    CHECK(format_scalar(Q("-0.125")) == "-1/8");
  }

  TEST_CASE("model strings") {
    const auto m = LevyModel::parse("brownian:sigma=0.01+gamma:a=10,b=20");
    CHECK(m.sigma2() == Q("0.0001"));
    CHECK(m.mean_rate() == Q("0.5"));
    CHECK(std::holds_alternative<GammaJumps>(m.jumps()));
    CHECK(LevyModel::parse(m.describe()).describe() == m.describe());

    const auto drifted = LevyModel::parse("gamma:a=1,b=2+drift:mu=-1e-1");
    CHECK(drifted.mean_rate() == Q("0.4"));
    CHECK(drifted.drift_rate() == Q("-0.1"));

    const auto synthetic = LevyModel::parse("synthetic:4:6+mean:m1=0+brownian:sigma2=1");
    const auto mv = moments(synthetic, 3);
    CHECK(mv.m == std::vector<Rational>{0, 4, 6});
    CHECK(error_code([&] { (void)moments(synthetic, 4); }) == "models.insufficient_moments");

    for (const char* bad : {"gamma:a=-1,b=2", "gamma:a=1", "brownian:sigma=-1", "cpoisson:lambda=1,jump=point:1:0.5:2:0.6",
                            "brownian:sigma=0", "weird:x=1", "gamma:a=1,b=2+cpoisson:lambda=1,jump=const:1", ""}) {
      CAPTURE(bad);
      CHECK(error_code([&] { (void)LevyModel::parse(bad); }).rfind("models.", 0) == 0);
    }
  }

  TEST_CASE("float conversion refuses unrepresentable moments") {
    const auto model = LevyModel::parse("gamma:a=1,b=1e-200");
    CHECK(error_code([&] { (void)moments_as<double>(model, 3); }) == "models.moment_undefined");
  }
}
