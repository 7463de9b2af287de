#pragma once

#include "levy_chaos/chaos.hpp"
#include "levy_chaos/evaluate.hpp"
#include "levy_chaos/ortho.hpp"
#include "levy_chaos/paths.hpp"
#include "levy_chaos/taylor.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace levy_chaos {

using Json = nlohmann::ordered_json;

/// Doubles become JSON numbers (shortest round trip); rationals become
/// strings "p/q" so that nothing is lost.
inline Json scalar_json(double v) { return v; }
inline Json scalar_json(const Rational& q) { return format_scalar(q); }

template <Scalar S>
constexpr const char* scalar_kind() {
  return std::same_as<S, double> ? "float" : "rational";
}

/// Reads a number or a "p/q" / decimal string.
template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return from_rational<S>(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return from_int<S>(j.get<long long>());
  if (j.is_number()) {
    if constexpr (std::same_as<S, double>) {
      return j.get<double>();
    } else {
      return parse_rational(j.dump());
    }
  }
  throw Error("serialize.invalid_scalar", "expected a number or a rational string, got " + j.dump());
}

template <Scalar S>
Json scalars_json(const std::vector<S>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

template <Scalar S>
Json poly_json(const TimePolynomial<S>& p) {
  return scalars_json(p.coeffs());
}

inline Json tuple_json(const IndexTuple& theta) { return theta.parts(); }

template <Scalar S>
Json moments_json(const MomentVector<S>& mv) {
  return Json{{"sigma2", scalar_json(mv.sigma2)}, {"sigma_adjusted", mv.adjusted}, {"m", scalars_json(mv.m)}};
}

template <Scalar S>
Json triangular_json(const LowerTriangular<S>& a) {
  Json rows = Json::array();
  for (unsigned i = 1; i <= a.order(); ++i) {
    Json row = Json::array();
    for (unsigned j = 1; j <= i; ++j) row.push_back(scalar_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar S>
Json expansion_json(const Expansion<S>& e) {
  Json j;
  j["order"] = e.order;
  j["basis"] = std::string(basis_name(e.basis));
  j["scalar"] = scalar_kind<S>();
  j["sigma_adjusted"] = e.moments.adjusted;
  j["sigma2"] = scalar_json(e.moments.sigma2);
  j["moments"] = scalars_json(e.moments.m);
  j["constant"] = poly_json(e.constant);
  Json terms = Json::array();
  for (const auto& [theta, poly] : e.terms) terms.push_back(Json{{"tuple", tuple_json(theta)}, {"poly", poly_json(poly)}});
  j["terms"] = std::move(terms);
  if (e.orthogonalizer) j["orthogonalizer"] = triangular_json(*e.orthogonalizer);
  return j;
}

template <Scalar S>
Json prm_json(const std::vector<PrmIntegrandDescriptor<S>>& descriptors) {
  Json a = Json::array();
  for (const auto& d : descriptors) {
    a.push_back(Json{{"tuple", tuple_json(d.theta)},
                     {"exponents", d.exponents},
                     {"first_exponent_earliest", d.first_exponent_earliest},
                     {"coefficient", poly_json(d.coefficient)}});
  }
  return a;
}

template <Scalar S>
Json ortho_json(const OrthoTriangular<S>& o) {
  return Json{{"order", o.order()},
              {"scalar", scalar_kind<S>()},
              {"eta_moments", scalars_json(o.eta.mu)},
              {"a", triangular_json(o.a)},
              {"b", triangular_json(o.b)}};
}

/// C^(0..n) and Pi_theta^(n) for every theta.
template <Scalar S>
Json coefficient_table_json(unsigned n, const MomentVector<S>& adjusted) {
  const auto table = c_poly_table(n, adjusted);
  Json c = Json::array();
  for (unsigned k = 0; k <= n; ++k) c.push_back(Json{{"k", k}, {"poly", poly_json(table[k])}});
  Json pi = Json::array();
  if (n > 0) {
    for (const auto& theta : index_set(n)) {
      pi.push_back(Json{{"tuple", tuple_json(theta)}, {"poly", poly_json(pi_coeff(theta, n, adjusted))}});
    }
  }
  return Json{{"order", n},
              {"scalar", scalar_kind<S>()},
              {"sigma2", scalar_json(adjusted.sigma2)},
              {"moments", scalars_json(adjusted.m)},
              {"C", std::move(c)},
              {"Pi", std::move(pi)}};
}

template <Scalar S>
Json jump_path_json(const JumpPath<S>& p) {
  Json jumps = Json::array();
  for (const auto& j : p.jumps) jumps.push_back(Json{{"t", scalar_json(j.time)}, {"x", scalar_json(j.size)}});
  return Json{{"horizon", scalar_json(p.horizon)},
              {"drift", scalar_json(p.drift)},
              {"jumps", std::move(jumps)},
              {"moments", scalars_json(p.moments.m)}};
}

template <Scalar S>
JumpPath<S> jump_path_from_json(const Json& j) {
  try {
    std::vector<Jump<S>> jumps;
    for (const auto& x : j.at("jumps")) jumps.push_back({scalar_from_json<S>(x.at("t")), scalar_from_json<S>(x.at("x"))});
    MomentVector<S> mv;
    if (j.contains("moments")) {
      for (const auto& m : j.at("moments")) mv.m.push_back(scalar_from_json<S>(m));
    }
    return make_jump_path<S>(scalar_from_json<S>(j.at("horizon")),
                             j.contains("drift") ? scalar_from_json<S>(j.at("drift")) : S(0), std::move(jumps),
                             std::move(mv));
  } catch (const Json::exception& e) {
    throw Error("serialize.invalid_jump_path", e.what());
  }
}

template <Scalar S>
Json report_json(const VerificationReport<S>& r) {
  Json norms = Json::array();
  for (const auto& [theta, v] : r.term_norms) norms.push_back(Json{{"tuple", tuple_json(theta)}, {"max_abs", scalar_json(v)}});
  Json j{{"n", r.n},
         {"basis", std::string(basis_name(r.basis))},
         {"scalar", scalar_kind<S>()},
         {"substrate", r.substrate},
         {"provenance", r.provenance},
         {"t0", scalar_json(r.t0)},
         {"t", scalar_json(r.t)}};
  if (r.substrate == "grid") {
    j["dt"] = r.dt;
    j["seed"] = r.seed;
  }
  j["direct_terminal"] = scalar_json(r.direct_terminal);
  j["reconstructed_terminal"] = scalar_json(r.reconstructed_terminal);
  j["terminal_diff"] = scalar_json(r.terminal_diff);
  j["max_abs_diff"] = scalar_json(r.max_abs_diff);
  j["term_norms"] = std::move(norms);
  return j;
}

/// step,t,dX,X
void write_path_csv(std::ostream& out, const GridPath& path);
/// step,t,direct,reconstructed,diff
void write_diff_csv(std::ostream& out, const GridSeries& series);
/// dt,steps,max_abs_diff,terminal_diff
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
/// order,paths,mean_abs_error,max_abs_error,max_abs_chaos_error
void write_truncation_csv(std::ostream& out, const std::vector<TruncationRow>& rows);

/// One row per term: tuple as "1;2", then q0..qd.
template <Scalar S>
void write_expansion_csv(std::ostream& out, const Expansion<S>& e) {
  out << "tuple,coefficients\n";
  auto row = [&](const std::string& name, const TimePolynomial<S>& p) {
    out << name << ',';
    for (std::size_t r = 0; r < p.coeffs().size(); ++r) out << (r ? ";" : "") << format_scalar(p.coeffs()[r]);
    out << '\n';
  };
  row("constant", e.constant);
  for (const auto& [theta, poly] : e.terms) {
    std::string name;
    for (std::size_t i = 0; i < theta.size(); ++i) name += (i ? ";" : "") + std::to_string(theta[i]);
    row(name, poly);
  }
}

}  // namespace levy_chaos
