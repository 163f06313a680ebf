#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qcover {

/// Box sizes for the verification suites; a negative value selects the
/// suite's default.
struct VerifyOptions {
  int max_n = -1;    // r, s bound (relations), degree (automorphisms), power (hopf), b_n bound (theta),
                     // n bound (casimir, classification), pure-F degree (form)
  int modules = -1;  // s, t bound for L(s) (x) L(t)
  int box = -1;      // a, b bound
  int weights = -1;  // |k| bound
  int samples = -1;  // random elements per sector (automorphisms)
  int cutoff = -1;   // Verma truncation (classification)
  unsigned seed = 1;
  unsigned threads = 0;  // 0: QCOVER_THREADS, else hardware concurrency
};

struct VerifyResult {
  std::string suite;
  bool ok = true;
  std::size_t cases = 0;
  /// "OK: ..." or "FAIL: <case>: <first counterexample>"
  std::string message;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Throws std::invalid_argument on an unknown suite.
VerifyResult run_suite(const std::string& name, const VerifyOptions& opt = {});

/// One independent check; returns a description of the failure or nothing.
struct VerifyCase {
  std::string label;
  std::function<std::optional<std::string>()> run;
};

/// Runs cases on a worker pool; the reported failure is the first one in case
/// order, so output does not depend on scheduling.
std::optional<std::string> run_cases(const std::vector<VerifyCase>& cases, unsigned threads);
unsigned worker_count(unsigned requested);

}  // namespace qcover
