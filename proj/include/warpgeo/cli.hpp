#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "warpgeo/verify.hpp"

namespace warpgeo::cli {

struct Range {
  double lo = 0.0, hi = 0.0;
  int count = 2;

  double at(int i) const { return lo + (hi - lo) * i / (count - 1); }
};

// "lo:hi:count", both endpoints included, count >= 2.
Range parse_range(const std::string& text);

enum class Command { Verify, CurvatureProfile, Geodesic, Transport, RankCheck };

struct RunConfig {
  Command command = Command::Verify;
  WarpParams params;
  bool a_set = false, b_set = false;  // verify falls back to the default grid otherwise
  Range t_range{-5.0, 5.0, 101};
  double theta = 1.5707963267948966;
  std::vector<double> from, dir;
  double T = 1.0;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  std::string out;            // empty writes to stdout
  std::string format = "csv"; // csv | json (verify always emits the JSON report)
};

// Runs the configured command; returns the process exit code
// (0 ok, 1 check failure, 2 usage error, 3 I/O error).
int run(const RunConfig& config);

// Parses argv and runs; maps parse errors to exit code 2.
int run_main(int argc, const char* const* argv);

// The default verification grid: a in {0, +-0.5, ln 2}, b in {0, +-0.5, +-1}.
std::vector<std::pair<double, double>> default_verify_grid();

// All checks for one parameter pair (seed derives the per-check streams).
std::vector<CheckReport> run_verify_suite(const WarpParams& params, double tol,
                                          std::uint64_t seed);

}  // namespace warpgeo::cli
