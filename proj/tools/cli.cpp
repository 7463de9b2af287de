#include "cli.hpp"

#include "levy_chaos/chaos.hpp"
#include "levy_chaos/error.hpp"
#include "levy_chaos/evaluate.hpp"
#include "levy_chaos/models.hpp"
#include "levy_chaos/ortho.hpp"
#include "levy_chaos/paths.hpp"
#include "levy_chaos/serialize.hpp"
#include "levy_chaos/taylor.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

namespace levy_chaos::cli {

namespace {

Json error_json(const std::string& code, const std::string& message) {
  return Json{{"error", Json{{"code", code}, {"message", message}}}};
}

std::string read_file(const std::string& path, const char* code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(code, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const char* code) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(code, e.what());
  }
}

/// Appends "--key value..." for every config-file key not given as a flag.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  std::string file;
  if (it != args.end()) {
    if (it + 1 == args.end()) throw Error("cli.invalid_arguments", "--config needs a file name");
    file = *(it + 1);
    args.erase(it, it + 2);
  } else {
    for (auto a = args.begin(); a != args.end(); ++a) {
      if (a->rfind("--config=", 0) == 0) {
        file = a->substr(9);
        args.erase(a);
        break;
      }
    }
  }
  if (file.empty()) return args;

  const Json config = parse_json(read_file(file, "cli.invalid_config"), "cli.invalid_config");
  if (!config.is_object()) throw Error("cli.invalid_config", "config file must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    args.push_back(flag);
    if (value.is_array()) {
      for (const auto& v : value) args.push_back(text(v));
    } else {
      args.push_back(text(value));
    }
  }
  return args;
}

/// Collected outputs, written only once the command has succeeded.
class Outputs {
 public:
  void add(const std::string& path, std::string content) { files_.emplace_back(path, std::move(content)); }

  void commit() const {
    std::vector<std::string> temps;
    try {
      for (const auto& [path, content] : files_) {
        const std::string tmp = path + ".tmp";
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cli.io", "cannot write " + path);
        temps.push_back(tmp);
        f << content;
        f.close();
        if (!f) throw Error("cli.io", "cannot write " + path);
      }
      for (std::size_t i = 0; i < files_.size(); ++i) std::filesystem::rename(temps[i], files_[i].first);
    } catch (...) {
      std::error_code ec;
      for (const auto& tmp : temps) std::filesystem::remove(tmp, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool rational(const RunConfig& c) {
  if (c.mode == "rational") return true;
  if (c.mode == "float") return false;
  throw Error("cli.invalid_config", "mode must be rational or float");
}

void require_float(const RunConfig& c) {
  if (rational(c)) {
    throw Error("cli.invalid_config", "command '" + c.command + "' simulates paths and needs --mode float");
  }
}

bool csv(const RunConfig& c) {
  if (c.format == "csv") return true;
  if (c.format == "json") return false;
  throw Error("cli.invalid_config", "format must be csv or json");
}

template <Scalar S>
std::string expand_text(const RunConfig& c, const LevyModel& model) {
  const Basis basis = parse_basis(c.basis);
  Expansion<S> e;
  switch (basis) {
    case Basis::Y: e = expand<S>(c.n, model); break;
    case Basis::Noncompensated: e = jamshidian_expand<S>(c.n); break;
    case Basis::H: e = to_h_basis(expand<S>(c.n, model), orthogonalize<S>(model, std::max(c.n, 1u))); break;
    case Basis::Prm: {
      const auto descriptors = prm_integrands<S>(c.n, model);
      if (csv(c)) throw Error("cli.invalid_config", "integrand descriptors are only written as JSON");
      return dump(Json{{"order", c.n}, {"basis", "PRM"}, {"scalar", scalar_kind<S>()}, {"integrands", prm_json(descriptors)}});
    }
  }
  if (csv(c)) {
    std::ostringstream ss;
    write_expansion_csv(ss, e);
    return ss.str();
  }
  return dump(expansion_json(e));
}

template <Scalar S>
std::string coeffs_text(const RunConfig& c, const LevyModel& model) {
  const auto mv = sigma_adjust(moments_as<S>(model, std::max(c.n, 2u)));
  return dump(coefficient_table_json(c.n, mv));
}

template <Scalar S>
std::string ortho_text(const RunConfig& c, const LevyModel& model) {
  return dump(ortho_json(orthogonalize<S>(model, c.n)));
}

template <Scalar S>
Json exact_verify_json(const RunConfig& c) {
  std::vector<JumpFixture> fixtures;
  if (!c.path_file.empty()) {
    const auto path = jump_path_from_json<Rational>(parse_json(read_file(c.path_file, "cli.invalid_path"), "cli.invalid_path"));
    fixtures.push_back({path, parse_rational(format_scalar(c.t0)), parse_rational(format_scalar(c.t))});
  } else {
    for (unsigned i = 0; i < c.fixtures; ++i) {
      fixtures.push_back(random_fixture(c.seed * 1000 + i, c.max_jumps, std::max(c.n, 2u)));
    }
  }
  constexpr double kRelativeTolerance = 1e-9;
  Json cases = Json::array();
  bool passed = true;
  double worst_relative = 0.0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto path = convert_path<S>(fixtures[i].path);
    const S t0 = from_rational<S>(fixtures[i].t0);
    const S t = from_rational<S>(fixtures[i].t);
    for (unsigned n = 1; n <= c.n; ++n) {
      const auto r = verify_exact(path, n, t0, t);
      bool ok;
      double relative = 0.0;
      if constexpr (std::same_as<S, Rational>) {
        ok = is_zero(r.terminal_diff);
      } else {
        relative = std::abs(r.terminal_diff) / std::max(std::abs(r.direct_terminal), 1.0);
        ok = relative <= kRelativeTolerance;
        worst_relative = std::max(worst_relative, relative);
      }
      passed = passed && ok;
      Json row{{"fixture", i},
               {"jumps", path.jumps.size()},
               {"n", n},
               {"t0", scalar_json(t0)},
               {"direct_terminal", scalar_json(r.direct_terminal)},
               {"terminal_diff", scalar_json(r.terminal_diff)}};
      if constexpr (std::same_as<S, double>) row["relative_diff"] = relative;
      row["ok"] = ok;
      cases.push_back(std::move(row));
    }
  }
  Json j{{"scalar", scalar_kind<S>()}, {"fixtures", fixtures.size()}, {"max_order", c.n}, {"passed", passed}};
  if constexpr (std::same_as<S, double>) {
    j["relative_tolerance"] = kRelativeTolerance;
    j["max_relative_diff"] = worst_relative;
  }
  j["cases"] = std::move(cases);
  return j;
}

FunctionalSpec<double> functional_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const unsigned order = j.value("order", 0u);
    if (kind == "forward") {
      const double t = j.at("grid").at(0).get<double>();
      return forward_functional(j.at("s0").get<double>(), j.at("rate").get<double>(), j.at("maturity").get<double>(), t,
                                order);
    }
    const auto grid = j.at("grid").get<std::vector<double>>();
    if (kind == "exp") return exp_functional<double>(grid, order, j.value("scale", 1.0));
    if (kind == "poly") {
      std::vector<TaylorTerm<double>> monomials;
      for (const auto& m : j.at("monomials")) {
        monomials.push_back({m.at("exponents").get<std::vector<unsigned>>(), scalar_from_json<double>(m.at("coefficient"))});
      }
      return poly_functional<double>(grid, order, std::move(monomials));
    }
    throw Error("taylor.unknown_functional", "unknown functional kind '" + kind + "' (expected exp, poly or forward)");
  } catch (const Json::exception& e) {
    throw Error("taylor.invalid_functional", e.what());
  }
}

Json functional_json_arg(const std::string& text) {
  const bool inline_json = !text.empty() && text.front() == '{';
  return parse_json(inline_json ? text : read_file(text, "taylor.invalid_functional"), "taylor.invalid_functional");
}

}  // namespace

bool parse(int argc, const char* const* argv, RunConfig& c, int& exit_code, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaos expansions of powers of Levy increments", "levy-chaos"};
  app.require_subcommand(1, 1);

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"coeffs", "C^(k) and Pi coefficient tables"},
      {"expand", "expansion of the n-th power in a chosen basis"},
      {"ortho", "orthogonalization coefficients a and b"},
      {"simulate", "sample a grid path (CSV)"},
      {"verify", "compare a reconstruction with the direct power on a sampled path"},
      {"convergence", "max difference across a sweep of step sizes"},
      {"exact-verify", "check the identity exactly on finite-jump paths"},
      {"taylor", "truncation study of a smooth functional"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--model", c.model, "process, e.g. brownian:sigma=0.01+gamma:a=10,b=20");
    sub->add_option("--n", c.n, "power / order");
    sub->add_option("--mode", c.mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "output file (stdout when omitted)");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--t0", c.t0, "start of the increment");
    sub->add_option("--t", c.t, "elapsed time of the increment");
    sub->add_option("--dt", c.dt, "grid step");
    sub->add_option("--dts", c.dts, "grid steps for the sweep")->delimiter(',');
    sub->add_option("--paths", c.paths, "number of sampled paths");
    sub->add_option("--basis", c.basis, "y, h, jamshidian or prm");
    sub->add_option("--report", c.report, "report JSON file (verify)");
    sub->add_option("--path", c.path_file, "jump path JSON (exact-verify, taylor in rational mode)");
    sub->add_option("--fixtures", c.fixtures, "number of random jump paths");
    sub->add_option("--max-jumps", c.max_jumps, "jumps per random path, at most");
    sub->add_option("--functional", c.functional, "functional JSON or file");
    sub->add_option("--orders", c.orders, "truncation orders")->delimiter(',');
    sub->add_option("--substrate", c.substrate, "exact or grid")->check(CLI::IsMember({"exact", "grid"}));
  }

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = 0;
    return false;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    exit_code = 0;
    return false;
  } catch (const CLI::ParseError& e) {
    err << error_json("cli.invalid_arguments", e.what()).dump() << "\n";
    exit_code = 2;
    return false;
  } catch (const Error& e) {
    err << error_json(e.code(), e.what()).dump() << "\n";
    exit_code = 2;
    return false;
  }
  c.command = app.get_subcommands().front()->get_name();
  return true;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    Outputs files;
    std::string stdout_text;
    auto primary = [&](std::string text) {
      if (c.out.empty()) {
        stdout_text += text;
      } else {
        files.add(c.out, std::move(text));
      }
    };
    const bool exact = rational(c);
    int status = 0;

    if (c.command == "coeffs") {
      const auto model = LevyModel::parse(c.model);
      primary(exact ? coeffs_text<Rational>(c, model) : coeffs_text<double>(c, model));
    } else if (c.command == "expand") {
      const auto model = LevyModel::parse(c.model);
      primary(exact ? expand_text<Rational>(c, model) : expand_text<double>(c, model));
    } else if (c.command == "ortho") {
      const auto model = LevyModel::parse(c.model);
      primary(exact ? ortho_text<Rational>(c, model) : ortho_text<double>(c, model));
    } else if (c.command == "simulate") {
      require_float(c);
      const auto path = simulate_grid(LevyModel::parse(c.model), c.t0 + c.t, c.dt, c.t0, c.seed);
      std::ostringstream ss;
      write_path_csv(ss, path);
      primary(ss.str());
    } else if (c.command == "verify") {
      require_float(c);
      const auto model = LevyModel::parse(c.model);
      const auto path = simulate_grid(model, c.t0 + c.t, c.dt, c.t0, c.seed);
      GridSeries series;
      const auto report = verify_grid(expand<double>(c.n, model), path, &series);
      Json j = report_json(report);
      j["model"] = model.describe();
      if (!c.out.empty()) {
        std::ostringstream ss;
        write_diff_csv(ss, series);
        files.add(c.out, ss.str());
      }
      if (c.report.empty()) {
        stdout_text += dump(j);
      } else {
        files.add(c.report, dump(j));
      }
    } else if (c.command == "convergence") {
      require_float(c);
      const auto model = LevyModel::parse(c.model);
      const auto rows = convergence_sweep(model, c.n, c.t0, c.t, c.dts, c.seed);
      if (csv(c)) {
        std::ostringstream ss;
        write_convergence_csv(ss, rows);
        primary(ss.str());
      } else {
        Json a = Json::array();
        for (const auto& r : rows) {
          a.push_back(Json{{"dt", r.dt}, {"steps", r.steps}, {"max_abs_diff", r.max_abs_diff}, {"terminal_diff", r.terminal_diff}});
        }
        primary(dump(Json{{"model", model.describe()}, {"n", c.n}, {"t0", c.t0}, {"t", c.t}, {"seed", c.seed}, {"rows", a}}));
      }
    } else if (c.command == "exact-verify") {
      if (c.n == 0) throw Error("cli.invalid_config", "exact-verify needs --n of at least 1");
      const Json j = exact ? exact_verify_json<Rational>(c) : exact_verify_json<double>(c);
      if (!j.at("passed").get<bool>()) status = 3;
      primary(dump(j));
    } else if (c.command == "taylor") {
      const Json fj = functional_json_arg(c.functional);
      if (exact) {
        if (c.path_file.empty()) throw Error("cli.invalid_config", "rational taylor evaluation needs --path");
        if (fj.at("kind") != "poly") throw Error("cli.invalid_config", "rational taylor evaluation supports poly only");
        const auto path = jump_path_from_json<Rational>(parse_json(read_file(c.path_file, "cli.invalid_path"), "cli.invalid_path"));
        std::vector<Rational> grid;
        for (const auto& t : fj.at("grid")) grid.push_back(scalar_from_json<Rational>(t));
        std::vector<TaylorTerm<Rational>> monomials;
        for (const auto& m : fj.at("monomials")) {
          monomials.push_back({m.at("exponents").get<std::vector<unsigned>>(), scalar_from_json<Rational>(m.at("coefficient"))});
        }
        const unsigned order = fj.value("order", c.orders.empty() ? 0u : c.orders.back());
        const auto v = eval_functional(poly_functional<Rational>(grid, order, monomials), path);
        primary(dump(Json{{"kind", "poly"},
                          {"order", order},
                          {"increments", scalars_json(v.increments)},
                          {"approx", scalar_json(v.approx)},
                          {"truncated_direct", scalar_json(v.truncated_direct)},
                          {"chaos_error", scalar_json(Rational(v.approx - v.truncated_direct))}}));
      } else {
        const auto model = LevyModel::parse(c.model);
        const auto spec = functional_from_json(fj);
        const auto rows = truncation_study(spec, c.orders, model, c.paths, c.dt, c.seed,
                                           c.substrate == "grid" ? Substrate::Grid : Substrate::Exact);
        if (csv(c)) {
          std::ostringstream ss;
          write_truncation_csv(ss, rows);
          primary(ss.str());
        } else {
          Json a = Json::array();
          for (const auto& r : rows) {
            a.push_back(Json{{"order", r.order},
                             {"paths", r.paths},
                             {"mean_abs_error", r.mean_abs_error},
                             {"max_abs_error", r.max_abs_error},
                             {"max_abs_chaos_error", r.max_abs_chaos_error}});
          }
          primary(dump(Json{{"functional", spec.kind}, {"model", model.describe()}, {"substrate", c.substrate}, {"dt", c.dt},
                            {"seed", c.seed}, {"rows", a}}));
        }
      }
    } else {
      throw Error("cli.unknown_command", "unknown command '" + c.command + "'");
    }

    files.commit();
    out << stdout_text;
    return status;
  } catch (const Error& e) {
    err << error_json(e.code(), e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << "\n";
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  int code = 0;
  if (!parse(argc, argv, config, code, out, err)) return code;
  return run(config, out, err);
}

}  // namespace levy_chaos::cli
