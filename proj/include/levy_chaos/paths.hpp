#pragma once

#include "levy_chaos/error.hpp"
#include "levy_chaos/models.hpp"
#include "levy_chaos/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace levy_chaos {

/// Independent random stream for path `index` of a batch seeded with `seed`.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index);

/// One increment of the model over a step of length dt.
double sample_increment(const LevyModel& model, double dt, std::mt19937_64& rng);

/// Sample path on an equally spaced grid. Step l covers
/// (start + l dt, start + (l+1) dt]; t0 is the grid point where the
/// expansion starts.
struct GridPath {
  double start = 0.0;
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> dX;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::string model;

  std::size_t steps() const noexcept { return dX.size(); }
  double time(std::size_t k) const { return start + static_cast<double>(k) * dt; }
  /// Grid index of time t; throws paths.misaligned when t is off the grid.
  std::size_t grid_index(double t) const;
  std::size_t t0_index() const { return grid_index(t0); }
};

/// Path on [0, horizon] with horizon/dt steps; horizon and t0 must be
/// multiples of dt.
GridPath simulate_grid(const LevyModel& model, double horizon, double dt, double t0, std::uint64_t seed,
                       std::uint64_t index = 0);

/// Sums blocks of `ratio` steps, starting at t0. Steps before t0 are dropped
/// so that t0 need not be aligned to the coarse grid.
GridPath coarsen(const GridPath& fine, std::size_t ratio);

/// Per-step increments (dX_l)^i - m~_i dt of the compensated power jump process.
std::vector<double> power_increments(const GridPath& path, unsigned i, const MomentVector<double>& adjusted);

/// The part of a path on [from, to] with t0 = from. Both ends must be grid points.
GridPath window(const GridPath& path, double from, double to);

/// X_{t_k} - X_{t0} for every grid index k >= t0 index (first entry zero).
std::vector<double> increment_series(const GridPath& path);

template <Scalar S>
struct Jump {
  S time;
  S size;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Finitely many jumps plus linear drift on [0, horizon], together with the
/// compensators to be used for its power jump processes.
template <Scalar S>
struct JumpPath {
  S horizon{1};
  S drift{0};
  std::vector<Jump<S>> jumps;
  MomentVector<S> moments;

  /// X_t, exactly.
  S value(const S& t) const {
    S x = drift * t;
    for (const auto& j : jumps) {
      if (j.time <= t) x += j.size;
    }
    return x;
  }

  friend bool operator==(const JumpPath&, const JumpPath&) = default;
};

/// Sorts the jumps and validates: times in (0, horizon], distinct, sizes nonzero.
template <Scalar S>
JumpPath<S> make_jump_path(S horizon, S drift, std::vector<Jump<S>> jumps, MomentVector<S> moments) {
  if (!(horizon > 0)) throw Error("paths.invalid_jump_path", "horizon must be positive");
  std::sort(jumps.begin(), jumps.end(), [](const Jump<S>& x, const Jump<S>& y) { return x.time < y.time; });
  for (std::size_t r = 0; r < jumps.size(); ++r) {
    const auto& j = jumps[r];
    if (!(j.time > 0) || j.time > horizon) {
      throw Error("paths.invalid_jump_path", "jump time " + format_scalar(j.time) + " outside (0, horizon]");
    }
    if (is_zero(j.size)) throw Error("paths.invalid_jump_path", "jump sizes must be nonzero");
    if (r > 0 && jumps[r - 1].time == j.time) {
      throw Error("paths.duplicate_jump_time", "two jumps at time " + format_scalar(j.time));
    }
  }
  return JumpPath<S>{std::move(horizon), std::move(drift), std::move(jumps), std::move(moments)};
}

/// Uniform rational in [lo, hi] on the lattice with the given denominator.
Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, unsigned denominator);

/// Fixture generator: `count` jumps at distinct times drawn uniformly from
/// a fine lattice in (0, horizon], sizes uniform on a lattice in
/// [-size_bound, size_bound] minus zero. Drift and moments are zero unless
/// set afterwards.
JumpPath<Rational> random_jump_path(unsigned count, const Rational& horizon, const Rational& size_bound,
                                    std::uint64_t seed);

/// Random verification case: up to max_jumps jumps on (0, 1], random
/// rational drift and compensators m_1..m_{moment_order}, and a random start
/// t0 in [0, 1/4] with end t = 1.
struct JumpFixture {
  JumpPath<Rational> path;
  Rational t0;
  Rational t;
};
JumpFixture random_fixture(std::uint64_t seed, unsigned max_jumps, unsigned moment_order);

template <Scalar S>
JumpPath<S> convert_path(const JumpPath<Rational>& path) {
  if constexpr (std::same_as<S, Rational>) {
    return path;
  } else {
    JumpPath<double> out;
    out.horizon = to_double(path.horizon);
    out.drift = to_double(path.drift);
    for (const auto& j : path.jumps) out.jumps.push_back({to_double(j.time), to_double(j.size)});
    out.moments = convert_moments<double>(path.moments);
    return out;
  }
}

/// The sampled path read as a finite-jump path: each step's increment is a
/// jump at the end of the step, with no drift in between.
JumpPath<double> as_jump_path(const GridPath& path, MomentVector<double> moments);

}  // namespace levy_chaos
