#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "levy-chaos");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = levy_chaos::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("levy_chaos_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("rational coefficient table") {
    const auto r = invoke({"coeffs", "--mode", "rational", "--n", "3", "--model", "gamma:a=2,b=1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["moments"] == json::array({"2", "2", "4"}));
    CHECK(j["C"][2]["poly"] == json::array({"0", "2", "4"}));
    CHECK(j["C"][3]["poly"] == json::array({"0", "4", "12", "8"}));
    CHECK(j["Pi"].size() == 7);
  }

  TEST_CASE("noncompensated expansion") {
    const auto r = invoke({"expand", "--basis", "jamshidian", "--n", "2", "--mode", "rational"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["basis"] == "NONCOMPENSATED");
    CHECK(j["terms"][0]["tuple"] == json::array({2}));
    CHECK(j["terms"][1]["poly"] == json::array({"2"}));
  }

  TEST_CASE("errors are structured and leave no output file") {
    const auto target = scratch("bad.json");
    const auto r = invoke({"coeffs", "--n", "99", "--out", target.string()});
    CHECK(r.code == 1);
    const auto j = json::parse(r.err);
    CHECK(j["error"]["code"] == "combinatorics.order_too_large");
    CHECK_FALSE(fs::exists(target));
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    const auto bad_model = invoke({"expand", "--model", "levy:nope"});
    CHECK(bad_model.code == 1);
    CHECK(json::parse(bad_model.err)["error"]["code"].get<std::string>().rfind("models.", 0) == 0);

    CHECK(invoke({"coeffs", "--mode", "complex"}).code == 2);
    CHECK(invoke({"simulate", "--mode", "rational"}).code == 1);
  }

  TEST_CASE("output is reproducible byte for byte") {
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    for (const auto& p : {a, b}) {
      REQUIRE(invoke({"simulate", "--model", "brownian:sigma=0.02+gamma:a=10,b=20", "--dt", "1e-3", "--seed",
                      "9", "--format", "csv", "--out", p.string()})
                  .code == 0);
    }
    const auto text = slurp(a);
    CHECK(text.rfind("step,t,dX,X\n", 0) == 0);
    CHECK(text == slurp(b));

    const auto x = invoke({"verify", "--n", "3", "--dt", "1e-3", "--seed", "5"});
    const auto y = invoke({"verify", "--n", "3", "--dt", "1e-3", "--seed", "5"});
    REQUIRE(x.code == 0);
    CHECK(x.out == y.out);
  }

  TEST_CASE("config file supplies defaults that flags override") {
    const auto cfg = scratch("config.json");
    std::ofstream(cfg) << R"({"n": 4, "mode": "rational", "model": "gamma:a=2,b=1"})";
    const auto from_file = json::parse(invoke({"coeffs", "--config", cfg.string()}).out);
    CHECK(from_file["order"] == 4);
    CHECK(from_file["scalar"] == "rational");
    const auto overridden = json::parse(invoke({"coeffs", "--config", cfg.string(), "--n", "2"}).out);
    CHECK(overridden["order"] == 2);
    CHECK(overridden["moments"][0] == "2");
  }

  TEST_CASE("exact verification over random fixtures") {
    const auto r = invoke({"exact-verify", "--n", "4", "--mode", "rational", "--fixtures", "5"});
    CHECK(r.code == 0);
    const auto f = invoke({"exact-verify", "--n", "4", "--fixtures", "5"});
    CHECK(f.code == 0);
  }

  TEST_CASE("verify writes the diff series and the report") {
    const auto diff = scratch("diff.csv");
    const auto report = scratch("report.json");
    const auto r = invoke({"verify", "--n", "2", "--dt", "1e-3", "--out", diff.string(), "--report", report.string()});
    REQUIRE(r.code == 0);
    const auto text = slurp(diff);
    CHECK(text.rfind("step,t,direct,reconstructed,diff\n0,0,0,0,0\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1002);
    const auto j = json::parse(slurp(report));
    CHECK(j["substrate"] == "grid");
    CHECK(j["max_abs_diff"].get<double>() < 1e-3);
  }

  TEST_CASE("remaining subcommands") {
    const auto ortho = json::parse(invoke({"ortho", "--n", "2", "--mode", "rational"}).out);
    CHECK(ortho["a"][1] == json::array({"-1/10", "1"}));
    const auto sweep = json::parse(invoke({"convergence", "--n", "2", "--t0", "0.0099"}).out);
    REQUIRE(sweep["rows"].size() == 3);
    CHECK(sweep["rows"][2]["max_abs_diff"] < sweep["rows"][0]["max_abs_diff"]);
    const auto taylor = json::parse(invoke({"taylor", "--orders", "2,4", "--paths", "2", "--dt", "1e-2"}).out);
    CHECK(taylor["rows"][1]["mean_abs_error"] < taylor["rows"][0]["mean_abs_error"]);
    const auto prm = json::parse(invoke({"expand", "--basis", "prm", "--n", "2", "--mode", "rational"}).out);
    CHECK(prm["integrands"].size() == 3);
    const auto h = json::parse(invoke({"expand", "--basis", "h", "--n", "2"}).out);
    CHECK(h.contains("orthogonalizer"));
  }

  TEST_CASE("order cap follows the environment") {
    ::setenv("LEVY_CHAOS_KMAX", "3", 1);
    const auto capped = invoke({"coeffs", "--n", "4"});
    ::unsetenv("LEVY_CHAOS_KMAX");
    CHECK(capped.code == 1);
    CHECK(json::parse(capped.err)["error"]["code"] == "combinatorics.order_too_large");
    CHECK(invoke({"coeffs", "--n", "4"}).code == 0);
  }
}
