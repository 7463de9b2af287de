#include "levy_chaos/models.hpp"

#include "levy_chaos/combinatorics.hpp"

#include <cctype>
#include <optional>
#include <map>
#include <sstream>

namespace levy_chaos {
namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error("models.invalid", message); }

void check_probability(const Rational& p, const char* what) {
  if (p < 0 || p > 1) invalid(std::string(what) + " must lie in [0, 1]");
}

void validate_law(const JumpLaw& law) {
  std::visit(
      [](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, TwoPoint>) {
          check_probability(l.p_low, "p-");
          check_probability(l.p_high, "p+");
          if (l.p_low + l.p_high != 1) invalid("two-point probabilities must sum to 1");
          if ((l.low.is_zero() && l.p_low > 0) || (l.high.is_zero() && l.p_high > 0)) {
            invalid("jump sizes must be nonzero");
          }
        } else if constexpr (std::is_same_v<L, ExponentialSigned>) {
          if (l.rate <= 0) invalid("exponential jump rate must be positive");
          check_probability(l.p_positive, "sign probability");
        } else {
          if (l.value.is_zero()) invalid("deterministic jump size must be nonzero");
        }
      },
      law);
}

Rational power(const Rational& x, unsigned i) {
  Rational r = 1;
  for (unsigned k = 0; k < i; ++k) r *= x;
  return r;
}

/// E[J^i] for the jump-size law.
Rational law_moment(const JumpLaw& law, unsigned i) {
  return std::visit(
      [i](const auto& l) -> Rational {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, TwoPoint>) {
          return l.p_low * power(l.low, i) + l.p_high * power(l.high, i);
        } else if constexpr (std::is_same_v<L, ExponentialSigned>) {
          const Rational magnitude = Rational(factorial(i)) / power(l.rate, i);
          const Rational sign_weight = (i % 2 == 0) ? Rational(1) : Rational(2 * l.p_positive - 1);
          return magnitude * sign_weight;
        } else {
          return power(l.value, i);
        }
      },
      law);
}

/// Moment m_i of the Levy measure, i >= 2 (or the jump mean for i == 1).
Rational levy_measure_moment(const JumpPart& jumps, unsigned i) {
  return std::visit(
      [i](const auto& part) -> Rational {
        using P = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<P, NoJumps>) {
          return 0;
        } else if constexpr (std::is_same_v<P, GammaJumps>) {
          return part.shape * Rational(factorial(i - 1)) / power(part.rate, i);
        } else if constexpr (std::is_same_v<P, CompoundPoisson>) {
          return part.intensity * law_moment(part.law, i);
        } else {
          if (i < 2) return 0;
          if (i - 2 >= part.higher.size()) {
            throw Error("models.insufficient_moments",
                        "synthetic model supplies m_2..m_" + std::to_string(part.higher.size() + 1) +
                            " but m_" + std::to_string(i) + " was requested");
          }
          return part.higher[i - 2];
        }
      },
      jumps);
}

std::string law_text(const JumpLaw& law) {
  return std::visit(
      [](const auto& l) -> std::string {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, TwoPoint>) {
          return "point:" + format_scalar(l.low) + ":" + format_scalar(l.p_low) + ":" +
                 format_scalar(l.high);
        } else if constexpr (std::is_same_v<L, ExponentialSigned>) {
          return "exp:" + format_scalar(l.rate) + ":" + format_scalar(l.p_positive);
        } else {
          return "const:" + format_scalar(l.value);
        }
      },
      law);
}

// ---- model string parsing ----

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Splits on '+' only where a component name follows, so "1e+3" survives.
std::vector<std::string_view> split_components(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+' && i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1])) &&
        i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::map<std::string, std::string, std::less<>> parse_params(std::string_view body,
                                                             std::string_view component) {
  std::map<std::string, std::string, std::less<>> params;
  if (body.empty()) return params;
  for (auto item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      invalid("expected key=value in '" + std::string(component) + "', got '" + std::string(item) + "'");
    }
    params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return params;
}

Rational take(std::map<std::string, std::string, std::less<>>& params, std::string_view key,
              std::string_view component) {
  const auto it = params.find(key);
  if (it == params.end()) {
    invalid("component '" + std::string(component) + "' needs parameter '" + std::string(key) + "'");
  }
  Rational v = parse_rational(it->second);
  params.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, std::string, std::less<>>& params,
                      std::string_view component) {
  if (!params.empty()) {
    invalid("unknown parameter '" + params.begin()->first + "' in '" + std::string(component) + "'");
  }
}

JumpLaw parse_law(std::string_view text) {
  const auto fields = split(text, ':');
  if (fields[0] == "point" && fields.size() == 4) {
    TwoPoint law{parse_rational(fields[1]), parse_rational(fields[2]), parse_rational(fields[3]), 0};
    law.p_high = 1 - law.p_low;
    return law;
  }
  if (fields[0] == "exp" && fields.size() == 3) {
    return ExponentialSigned{parse_rational(fields[1]), parse_rational(fields[2])};
  }
  if (fields[0] == "const" && fields.size() == 2) {
    return Deterministic{parse_rational(fields[1])};
  }
  invalid("unknown jump law '" + std::string(text) +
          "' (expected point:<x->:<p->:<x+>, exp:<rate>:<p+> or const:<x>)");
}

}  // namespace

LevyModel::LevyModel(Rational sigma2, Rational mean_rate, JumpPart jumps)
    : sigma2_(std::move(sigma2)), mean_rate_(std::move(mean_rate)), jumps_(std::move(jumps)) {
  if (sigma2_ < 0) invalid("sigma^2 must be nonnegative");
  std::visit(
      [](const auto& part) {
        using P = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<P, GammaJumps>) {
          if (part.shape <= 0 || part.rate <= 0) invalid("gamma jumps need a > 0 and b > 0");
        } else if constexpr (std::is_same_v<P, CompoundPoisson>) {
          if (part.intensity <= 0) invalid("compound Poisson intensity must be positive");
          validate_law(part.law);
        }
      },
      jumps_);
  if (!has_jumps() && sigma2_.is_zero() && mean_rate_.is_zero()) {
    invalid("degenerate model: no jumps, no Brownian part and zero mean");
  }
}

namespace {

Rational natural_jump_mean(const JumpPart& jumps) {
  if (std::holds_alternative<GammaJumps>(jumps) || std::holds_alternative<CompoundPoisson>(jumps)) {
    return levy_measure_moment(jumps, 1);
  }
  return 0;
}

}  // namespace

LevyModel LevyModel::with_natural_mean(Rational sigma2, JumpPart jumps, Rational extra_drift) {
  Rational mean = extra_drift + natural_jump_mean(jumps);
  return LevyModel(std::move(sigma2), std::move(mean), std::move(jumps));
}

Rational LevyModel::jump_mean_rate() const { return natural_jump_mean(jumps_); }

LevyModel LevyModel::parse(std::string_view spec) {
  Rational sigma2 = 0;
  Rational drift = 0;
  std::optional<Rational> explicit_mean;
  JumpPart jumps = NoJumps{};
  bool have_jumps = false;
  if (spec.empty()) invalid("empty model specification");

  for (auto component : split_components(spec)) {
    const auto colon = component.find(':');
    const std::string_view name = component.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? "" : component.substr(colon + 1);
    auto set_jumps = [&](JumpPart part) {
      if (have_jumps) invalid("at most one jump component is supported");
      jumps = std::move(part);
      have_jumps = true;
    };

    if (name == "brownian") {
      auto params = parse_params(body, component);
      if (params.contains("sigma2")) {
        const Rational variance = take(params, "sigma2", component);
        if (variance < 0) invalid("sigma2 must be nonnegative");
        sigma2 += variance;
      } else {
        const Rational sigma = take(params, "sigma", component);
        if (sigma < 0) invalid("sigma must be nonnegative");
        sigma2 += sigma * sigma;
      }
      reject_leftovers(params, component);
    } else if (name == "gamma") {
      auto params = parse_params(body, component);
      GammaJumps g{take(params, "a", component), take(params, "b", component)};
      reject_leftovers(params, component);
      set_jumps(g);
    } else if (name == "cpoisson") {
      auto params = parse_params(body, component);
      const auto jump = params.find("jump");
      if (jump == params.end()) invalid("cpoisson needs jump=<law>");
      JumpLaw law = parse_law(jump->second);
      params.erase(jump);
      CompoundPoisson cp{take(params, "lambda", component), std::move(law)};
      reject_leftovers(params, component);
      set_jumps(cp);
    } else if (name == "synthetic") {
      SyntheticMoments sm;
      for (auto v : split(body, ':')) sm.higher.push_back(parse_rational(v));
      set_jumps(sm);
    } else if (name == "drift") {
      auto params = parse_params(body, component);
      drift += take(params, "mu", component);
      reject_leftovers(params, component);
    } else if (name == "mean") {
      auto params = parse_params(body, component);
      explicit_mean = take(params, "m1", component);
      reject_leftovers(params, component);
    } else {
      invalid("unknown model component '" + std::string(name) + "'");
    }
  }
  if (explicit_mean) return LevyModel(sigma2, *explicit_mean + drift, std::move(jumps));
  return with_natural_mean(sigma2, std::move(jumps), drift);
}

std::string LevyModel::describe() const {
  std::ostringstream out;
  // sigma itself need not be rational, so the variance is written instead.
  std::vector<std::string> parts;
  if (!sigma2_.is_zero()) parts.push_back("brownian:sigma2=" + format_scalar(sigma2_));
  std::visit(
      [&parts](const auto& part) {
        using P = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<P, GammaJumps>) {
          parts.push_back("gamma:a=" + format_scalar(part.shape) + ",b=" + format_scalar(part.rate));
        } else if constexpr (std::is_same_v<P, CompoundPoisson>) {
          parts.push_back("cpoisson:lambda=" + format_scalar(part.intensity) +
                          ",jump=" + law_text(part.law));
        } else if constexpr (std::is_same_v<P, SyntheticMoments>) {
          std::string s = "synthetic:";
          for (std::size_t i = 0; i < part.higher.size(); ++i) {
            if (i) s += ":";
            s += format_scalar(part.higher[i]);
          }
          parts.push_back(s);
        }
      },
      jumps_);
  parts.push_back("mean:m1=" + format_scalar(mean_rate_));
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "+" : "") << parts[i];
  return out.str();
}

MomentVector<Rational> moments(const LevyModel& model, unsigned n) {
  if (n == 0) throw Error("models.invalid", "moment order must be at least 1");
  MomentVector<Rational> mv;
  mv.sigma2 = model.sigma2();
  mv.m.reserve(n);
  mv.m.push_back(model.mean_rate());
  for (unsigned i = 2; i <= n; ++i) mv.m.push_back(levy_measure_moment(model.jumps(), i));
  return mv;
}

}  // namespace levy_chaos
