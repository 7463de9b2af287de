#include "levy_chaos/paths.hpp"

#include <cmath>
#include <set>
#include <variant>

namespace levy_chaos {

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6c657679u};
  return std::mt19937_64(seq);
}

namespace {

double as_double(const Rational& q) { return q.convert_to<double>(); }

/// Model parameters converted once so that sampling a step is cheap.
class IncrementSampler {
 public:
  IncrementSampler(const LevyModel& model, double dt) : dt_(dt) {
    drift_ = as_double(model.drift_rate()) * dt;
    sigma_ = std::sqrt(as_double(model.sigma2()) * dt);
    std::visit(
        [&](const auto& part) {
          using P = std::decay_t<decltype(part)>;
          if constexpr (std::is_same_v<P, GammaJumps>) {
            gamma_ = std::gamma_distribution<double>(as_double(part.shape) * dt, 1.0 / as_double(part.rate));
            kind_ = Kind::Gamma;
          } else if constexpr (std::is_same_v<P, CompoundPoisson>) {
            poisson_ = std::poisson_distribution<long>(as_double(part.intensity) * dt);
            law_ = part.law;
            kind_ = Kind::CompoundPoisson;
          } else if constexpr (std::is_same_v<P, SyntheticMoments>) {
            throw Error("paths.not_simulable", "a model given only by its moments cannot be simulated");
          }
        },
        model.jumps());
  }

  double operator()(std::mt19937_64& rng) {
    double dx = drift_;
    if (sigma_ > 0.0) dx += sigma_ * normal_(rng);
    switch (kind_) {
      case Kind::None: break;
      case Kind::Gamma: dx += gamma_(rng); break;
      case Kind::CompoundPoisson: {
        const long count = poisson_(rng);
        for (long c = 0; c < count; ++c) dx += jump_size(rng);
        break;
      }
    }
    return dx;
  }

 private:
  enum class Kind { None, Gamma, CompoundPoisson };

  double jump_size(std::mt19937_64& rng) {
    return std::visit(
        [&](const auto& l) -> double {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, TwoPoint>) {
            return uniform_(rng) < as_double(l.p_low) ? as_double(l.low) : as_double(l.high);
          } else if constexpr (std::is_same_v<L, ExponentialSigned>) {
            const double e = -std::log1p(-uniform_(rng)) / as_double(l.rate);
            return uniform_(rng) < as_double(l.p_positive) ? e : -e;
          } else {
            return as_double(l.value);
          }
        },
        law_);
  }

  double dt_;
  double drift_ = 0.0;
  double sigma_ = 0.0;
  Kind kind_ = Kind::None;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
  std::gamma_distribution<double> gamma_;
  std::poisson_distribution<long> poisson_;
  JumpLaw law_ = Deterministic{0};
};

std::size_t aligned_count(double span, double dt, const char* what) {
  const double ratio = span / dt;
  const double k = std::round(ratio);
  if (k < 0 || std::abs(ratio - k) > 1e-6) {
    throw Error("paths.misaligned", std::string(what) + " " + format_scalar(span) +
                                        " is not a multiple of the step " + format_scalar(dt));
  }
  return static_cast<std::size_t>(k);
}

}  // namespace

double sample_increment(const LevyModel& model, double dt, std::mt19937_64& rng) {
  IncrementSampler sampler(model, dt);
  return sampler(rng);
}

std::size_t GridPath::grid_index(double t) const {
  const std::size_t k = aligned_count(t - start, dt, "time");
  if (k > steps()) {
    throw Error("paths.misaligned", "time " + format_scalar(t) + " lies beyond the end of the path");
  }
  return k;
}

GridPath simulate_grid(const LevyModel& model, double horizon, double dt, double t0, std::uint64_t seed,
                       std::uint64_t index) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("paths.invalid_step", "dt must be positive");
  if (!(horizon >= dt)) throw Error("paths.invalid_step", "horizon must be at least one step");
  if (!(t0 >= 0.0)) throw Error("paths.misaligned", "t0 must be nonnegative");
  GridPath path;
  path.dt = dt;
  path.t0 = t0;
  path.seed = seed;
  path.index = index;
  path.model = model.describe();
  const std::size_t steps = aligned_count(horizon, dt, "horizon");
  if (aligned_count(t0, dt, "t0") > steps) throw Error("paths.misaligned", "t0 lies beyond the horizon");

  IncrementSampler sampler(model, dt);
  auto rng = stream_engine(seed, index);
  path.dX.resize(steps);
  for (auto& dx : path.dX) dx = sampler(rng);
  return path;
}

GridPath coarsen(const GridPath& fine, std::size_t ratio) {
  if (ratio == 0) throw Error("paths.invalid_step", "coarsening ratio must be positive");
  const std::size_t k0 = fine.t0_index();
  const std::size_t remaining = fine.steps() - k0;
  if (remaining % ratio != 0) {
    throw Error("paths.misaligned", "steps after t0 (" + std::to_string(remaining) +
                                        ") are not a multiple of the coarsening ratio " + std::to_string(ratio));
  }
  GridPath out;
  out.start = fine.t0;
  out.t0 = fine.t0;
  out.dt = fine.dt * static_cast<double>(ratio);
  out.seed = fine.seed;
  out.index = fine.index;
  out.model = fine.model;
  out.dX.reserve(remaining / ratio);
  for (std::size_t b = 0; b < remaining / ratio; ++b) {
    double sum = 0.0;
    for (std::size_t l = 0; l < ratio; ++l) sum += fine.dX[k0 + b * ratio + l];
    out.dX.push_back(sum);
  }
  return out;
}

std::vector<double> power_increments(const GridPath& path, unsigned i, const MomentVector<double>& adjusted) {
  if (!adjusted.adjusted) {
    throw Error("paths.unadjusted_moments", "power increments need sigma-adjusted compensators");
  }
  if (i == 0) throw Error("paths.invalid_power", "power must be positive");
  const double drift = adjusted(i) * path.dt;
  std::vector<double> out(path.steps());
  for (std::size_t l = 0; l < out.size(); ++l) {
    double p = path.dX[l];
    for (unsigned r = 1; r < i; ++r) p *= path.dX[l];
    out[l] = p - drift;
  }
  return out;
}

GridPath window(const GridPath& path, double from, double to) {
  const std::size_t a = path.grid_index(from);
  const std::size_t b = path.grid_index(to);
  if (a >= b) throw Error("paths.misaligned", "window must span at least one step");
  GridPath out = path;
  out.t0 = from;
  out.dX.resize(b);
  return out;
}

JumpPath<double> as_jump_path(const GridPath& path, MomentVector<double> moments) {
  std::vector<Jump<double>> jumps;
  for (std::size_t l = 0; l < path.steps(); ++l) {
    if (path.dX[l] != 0.0) jumps.push_back({path.time(l + 1), path.dX[l]});
  }
  return make_jump_path<double>(path.time(path.steps()), 0.0, std::move(jumps), std::move(moments));
}

std::vector<double> increment_series(const GridPath& path) {
  const std::size_t k0 = path.t0_index();
  std::vector<double> x(path.steps() - k0 + 1, 0.0);
  for (std::size_t k = k0; k < path.steps(); ++k) x[k - k0 + 1] = x[k - k0] + path.dX[k];
  return x;
}

namespace {

BigInt floor_of(const Rational& q) {
  BigInt f = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  if (Rational(f) > q) f -= 1;
  return f;
}

}  // namespace

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, unsigned denominator) {
  const Rational d(denominator);
  BigInt first = floor_of(lo * d);
  if (Rational(first) < lo * d) first += 1;
  const BigInt last = floor_of(hi * d);
  if (first > last) throw Error("paths.invalid_range", "empty lattice range");
  std::uniform_int_distribution<long long> pick(first.convert_to<long long>(), last.convert_to<long long>());
  return Rational(pick(rng), static_cast<long long>(denominator));
}

JumpPath<Rational> random_jump_path(unsigned count, const Rational& horizon, const Rational& size_bound,
                                    std::uint64_t seed) {
  constexpr unsigned kTimeLattice = 4096;
  constexpr unsigned kSizeLattice = 64;
  if (count > kTimeLattice) throw Error("paths.invalid_jump_path", "too many jumps for the time lattice");
  auto rng = stream_engine(seed, 0);
  std::uniform_int_distribution<unsigned> slot(1, kTimeLattice);
  std::set<unsigned> slots;
  while (slots.size() < count) slots.insert(slot(rng));
  std::vector<Jump<Rational>> jumps;
  for (unsigned s : slots) {
    Rational size = 0;
    while (size == 0) size = random_rational(rng, -size_bound, size_bound, kSizeLattice);
    jumps.push_back({horizon * Rational(s, kTimeLattice), size});
  }
  MomentVector<Rational> mv;
  return make_jump_path<Rational>(horizon, 0, std::move(jumps), mv);
}

JumpFixture random_fixture(std::uint64_t seed, unsigned max_jumps, unsigned moment_order) {
  auto rng = stream_engine(seed, 1);
  std::uniform_int_distribution<unsigned> count(0, max_jumps);
  JumpFixture f;
  f.path = random_jump_path(count(rng), Rational(1), Rational(3, 2), seed);
  f.path.drift = random_rational(rng, -2, 2, 16);
  for (unsigned i = 0; i < moment_order; ++i) f.path.moments.m.push_back(random_rational(rng, -2, 2, 16));
  f.t0 = random_rational(rng, 0, Rational(1, 4), 64);
  f.t = 1;
  return f;
}

}  // namespace levy_chaos
