#pragma once

// Reproduction suite: nine numbered checks over the built-in objects, shared
// by the command-line front end and the acceptance-test binary.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asymptotica/expr.hpp"

namespace asym::verify {

struct Context {
  bool inject_failure = false;            // negative control: perturb known quantities
  std::vector<std::uint64_t> seeds{0, 1, 2};
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

/// Random expression tree in x built through the Expr API.  With `total`
/// set, only everywhere-defined operations are used (no division, no sqrt).
Expr random_expr(std::mt19937_64& rng, int depth, bool total);

/// ASYMPTOTICA_SEED (default 0) and the two following seeds.
std::vector<std::uint64_t> default_seeds();

struct Metric {
  std::string name;
  double value;
  double target;
  double tolerance;
  bool passed;
};

struct CheckResult {
  int id = 0;
  std::string tag;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Metric> metrics;
  std::vector<std::string> notes;
  std::string error;  // set when the check threw
};

struct Check {
  int id;
  std::string tag;
  std::string title;
  std::function<void(const Context&, CheckResult&)> run;
};

const std::vector<Check>& checks();

/// Resolve a selector ("3" or "t5") to a check id; 0 if unknown.
int resolve(const std::string& selector);

CheckResult run_check(const Check& c, const Context& ctx);
/// Runs the selected ids (all when empty) in order.
std::vector<CheckResult> run(const Context& ctx, const std::vector<int>& ids = {});

}  // namespace asym::verify
