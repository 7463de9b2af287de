#include "levy_chaos/error.hpp"
#include "levy_chaos/paths.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

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

/// E[G^i] / dt for G ~ Gamma(shape a dt, rate b).
double gamma_power_rate(double a, double b, double dt, unsigned i) {
  return std::exp(std::lgamma(a * dt + i) - std::lgamma(a * dt)) / std::pow(b, i) / dt;
}

}  // namespace

TEST_SUITE("paths") {
  TEST_CASE("deterministic drift path") {
    const auto path = simulate_grid(LevyModel::parse("drift:mu=0.3"), 1.0, 0.01, 0.0, 1);
    CHECK(path.steps() == 100);
    for (double dx : path.dX) CHECK(dx == doctest::Approx(0.003).epsilon(1e-14));
  }

  TEST_CASE("gamma increments have the right mean") {
    const double dt = 1e-4;
    const auto path = simulate_grid(LevyModel::parse("gamma:a=10,b=20"), 100.0, dt, 0.0, 3);
    REQUIRE(path.steps() == 1000000);
    double sum = 0, sum2 = 0;
    for (double dx : path.dX) {
      sum += dx / dt;
      sum2 += (dx / dt) * (dx / dt);
    }
    const double n = static_cast<double>(path.steps());
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 0.5) < 3 * se);
  }

  TEST_CASE("simulation is reproducible per seed and path index") {
    const auto model = LevyModel::parse("brownian:sigma=0.02+gamma:a=10,b=20");
    const auto a = simulate_grid(model, 1.0, 1e-3, 0.0, 42, 5);
    const auto b = simulate_grid(model, 1.0, 1e-3, 0.0, 42, 5);
    const auto c = simulate_grid(model, 1.0, 1e-3, 0.0, 42, 6);
    CHECK(a.dX == b.dX);
    CHECK(a.dX != c.dX);
    CHECK(a.model == model.describe());
    CHECK(a.seed == 42);
  }

  TEST_CASE("compound Poisson paths") {
    const auto model = LevyModel::parse("cpoisson:lambda=50,jump=const:2");
    const auto path = simulate_grid(model, 10.0, 1e-3, 0.0, 1);
    CHECK(model.drift_rate() == 0);
    std::size_t jumps = 0;
    for (double dx : path.dX) {
      const double k = dx / 2.0;
      CHECK(std::abs(k - std::round(k)) < 1e-12);
      jumps += static_cast<std::size_t>(std::round(k));
    }
    CHECK(jumps > 350);
    CHECK(jumps < 650);
    CHECK(error_code([] { (void)simulate_grid(LevyModel::parse("synthetic:1:2"), 1.0, 0.1, 0.0, 1); }) ==
          "paths.not_simulable");
  }

  TEST_CASE("grid alignment") {
    const auto model = LevyModel::parse("gamma:a=10,b=20");
    CHECK(error_code([&] { (void)simulate_grid(model, 1.0, 1e-2, 0.0099, 1); }) == "paths.misaligned");
    CHECK(error_code([&] { (void)simulate_grid(model, 1.0, 0.0, 0.0, 1); }) == "paths.invalid_step");
    CHECK(error_code([&] { (void)simulate_grid(model, 1.0, 0.3, 0.0, 1); }) == "paths.misaligned");
    const auto path = simulate_grid(model, 1.0099, 1e-4, 0.0099, 1);
    CHECK(path.t0_index() == 99);
    CHECK(path.steps() == 10099);

    const auto coarse = coarsen(path, 100);
    CHECK(coarse.steps() == 100);
    CHECK(coarse.t0_index() == 0);
    CHECK(coarse.dX[3] == doctest::Approx(std::accumulate(path.dX.begin() + 399, path.dX.begin() + 499, 0.0)));
    CHECK(error_code([&] { (void)coarsen(path, 7); }) == "paths.misaligned");
  }

  TEST_CASE("power increments") {
    GridPath path;
    path.dt = 0.5;
    path.dX = {1.0, -2.0, 0.0};
    auto mv = sigma_adjust(convert_moments<double>(test_support::moments_of({"0.2", "0.4", "0.1"}, "0.1")));
    CHECK(power_increments(path, 1, mv) == std::vector<double>{1.0 - 0.1, -2.0 - 0.1, -0.1});
    const auto p2 = power_increments(path, 2, mv);
    CHECK(p2[1] == doctest::Approx(4.0 - 0.25));
    CHECK(p2[2] == doctest::Approx(-0.25));

    GridPath flat;
    flat.dt = 0.1;
    flat.dX.assign(4, 0.0);
    for (double v : power_increments(flat, 3, mv)) CHECK(v == doctest::Approx(-0.01));

    CHECK(error_code([&] { (void)power_increments(path, 2, convert_moments<double>(test_support::moments_of({"0", "1"}))); }) ==
          "paths.unadjusted_moments");
  }

  TEST_CASE("squared Brownian increments sum to the variance rate") {
    const auto model = LevyModel::parse("brownian:sigma=1");
    double total = 0, total2 = 0;
    const int paths = 200;
    for (int p = 0; p < paths; ++p) {
      const auto path = simulate_grid(model, 1.0, 1e-3, 0.0, 7, p);
      const auto mv = sigma_adjust(moments_as<double>(model, 2));
      double qv = 0;
      for (double v : power_increments(path, 2, mv)) qv += v;
      qv += mv(2);  // add back the compensator over [0, 1]
      total += qv;
      total2 += qv * qv;
    }
    const double mean = total / paths;
    const double se = std::sqrt((total2 / paths - mean * mean) / paths);
    CHECK(std::abs(mean - 1.0) < 3 * se);
  }

  TEST_CASE("gamma power-jump rates approach the Levy moments as dt shrinks") {
    const double a = 10, b = 20;
    const auto model = LevyModel::parse("gamma:a=10,b=20");
    const auto mv = moments_as<double>(model, 3);
    for (unsigned i : {2u, 3u}) {
      double previous_bias = INFINITY;
      for (double dt : {1e-2, 1e-3, 1e-4}) {
        const double expected = gamma_power_rate(a, b, dt, i);
        const double bias = std::abs(expected - mv(i));
        CHECK(bias < previous_bias);
        previous_bias = bias;

        // the sampled rate matches the expected rate of the increment law
        const auto path = simulate_grid(model, 1e6 * dt, dt, 0.0, 21, i);
        double sum = 0, sum2 = 0;
        for (double dx : path.dX) {
          const double v = std::pow(dx, i) / dt;
          sum += v;
          sum2 += v * v;
        }
        const double n = static_cast<double>(path.steps());
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        CAPTURE(i);
        CAPTURE(dt);
        CHECK(std::abs(mean - expected) < 4 * se);
      }
      CHECK(previous_bias < 1e-2 * mv(i));
    }
  }

  TEST_CASE("jump paths") {
    const auto zero = make_jump_path<Rational>(1, 0, {}, {});
    CHECK(zero.value(Q("0.7")) == 0);

    const auto one = make_jump_path<Rational>(1, 0, {{Q("0.3"), 2}}, {});
    CHECK(one.value(Q("0.3")) == 2);
    CHECK(one.value(1) == 2);
    CHECK(one.value(Q("0.29")) == 0);

    CHECK(error_code([] { (void)make_jump_path<Rational>(1, 0, {{Q("0.3"), 2}, {Q("0.3"), 1}}, {}); }) ==
          "paths.duplicate_jump_time");
    CHECK(error_code([] { (void)make_jump_path<Rational>(1, 0, {{Q("1.5"), 2}}, {}); }) == "paths.invalid_jump_path");
    CHECK(error_code([] { (void)make_jump_path<Rational>(1, 0, {{Q("0.5"), 0}}, {}); }) == "paths.invalid_jump_path");
    CHECK(error_code([] { (void)make_jump_path<Rational>(1, 0, {{0, 1}}, {}); }) == "paths.invalid_jump_path");

    const auto sorted = make_jump_path<Rational>(1, 0, {{Q("0.8"), 1}, {Q("0.2"), -1}}, {});
    CHECK(sorted.jumps[0].time == Q("0.2"));

    const auto r1 = random_jump_path(5, 1, 1, 7);
    const auto r2 = random_jump_path(5, 1, 1, 7);
    CHECK(r1 == r2);
    CHECK(r1.jumps.size() == 5);
    for (const auto& j : r1.jumps) {
      CHECK(j.size != 0);
      CHECK(abs_value(j.size) <= 1);
    }
    CHECK(random_jump_path(5, 1, 1, 8) != r1);
  }

  TEST_CASE("grid path read as jumps") {
    GridPath path;
    path.dt = 0.25;
    path.dX = {1.0, 0.0, -0.5, 2.0};
    const auto jp = as_jump_path(path, {});
    CHECK(jp.jumps.size() == 3);
    CHECK(jp.jumps[0].time == 0.25);
    CHECK(jp.value(1.0) == 2.5);
    CHECK(jp.drift == 0.0);
  }
}
