#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levy_chaos::cli {

/// Everything a subcommand needs; filled from flags and optionally a JSON
/// config file (flags win).
struct RunConfig {
  std::string command;
  std::string model = "gamma:a=10,b=20";
  unsigned n = 2;
  double t0 = 0.0;
  double t = 1.0;
  double dt = 1e-4;
  std::vector<double> dts{1e-2, 1e-3, 1e-4};
  std::uint64_t seed = 1;
  std::size_t paths = 1;
  std::string basis = "y";
  std::string mode = "float";  // rational | float
  std::string format = "json";  // json | csv
  std::string out;               // primary output file; stdout when empty
  std::string report;            // verify: report JSON file; stdout when empty
  // exact-verify
  std::string path_file;
  unsigned fixtures = 30;
  unsigned max_jumps = 8;
  // taylor
  std::string functional = R"({"kind":"exp","scale":1,"grid":[0.5,1.0]})";
  std::vector<unsigned> orders{2, 4, 6, 8};
  std::string substrate = "exact";
};

/// Parses argv. Returns false with `exit_code` set when the program should
/// stop right away (help requested or a usage error already reported on err).
bool parse(int argc, const char* const* argv, RunConfig& config, int& exit_code, std::ostream& out,
           std::ostream& err);

/// Runs a parsed configuration. Errors are reported on `err` as
/// {"error":{"code":..., "message":...}} with a nonzero return value; output
/// files are only written when the whole command succeeds.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levy_chaos::cli
