#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qdeg/grover.hpp"
#include "qdeg/symfun.hpp"

namespace qdeg {

enum class Regime { Low, Middle, High };

/// LOW/HIGH carry the input recovered by the searches.
struct WeightClassification {
  Regime verdict = Regime::Middle;
  std::optional<BitString> recovered;

  auto operator<=>(const WeightClassification&) const = default;
};

/// Steps 1-4: find up to t ones exactly, one eps/2-error search for another
/// one, then the same for zeros on the flipped oracle.
/// Requires 1 <= t <= floor(n/2) + 1.
Algorithm<WeightClassification> classify_weight(int t, double eps);

/// Evaluates f via classify_weight with t = jump_parameter(f).
Algorithm<int> compute_symmetric(const SymmetricFunction& f, double eps);

/// A function constant on weights {t..n-t} and given by explicit tables
/// elsewhere (arbitrary, not necessarily symmetric).
class PromiseFunction {
 public:
  PromiseFunction(int n, int t, int middle_value, std::map<std::uint64_t, std::uint8_t> low_table,
                  std::map<std::uint64_t, std::uint8_t> high_table);

  /// Fills both tables from `rule` (enumerates all low/high inputs).
  static PromiseFunction tabulate(int n, int t, int middle_value, const std::function<int(const BitString&)>& rule);

  int arity() const { return n_; }
  int jump() const { return t_; }
  int middle_value() const { return middle_; }
  /// Throws SpecificationError if x falls in a table and has no entry.
  int operator()(const BitString& x) const;

 private:
  int n_;
  int t_;
  int middle_;
  std::map<std::uint64_t, std::uint8_t> low_;
  std::map<std::uint64_t, std::uint8_t> high_;
};

Algorithm<int> compute_promise(const PromiseFunction& f, double eps);

/// Worst-case total queries (Grover plus verification) of compute_symmetric
/// over every branch, from the subroutine constants.
int query_budget(int n, int t, double eps);

struct InputReport {
  BitString input;
  int expected = 0;
  double error_mass = 0.0;
  PathCost max_queries;
  std::size_t leaves = 0;
  double pruned_mass = 0.0;
};

struct AlgorithmReport {
  std::vector<InputReport> inputs;
  double worst_error = 0.0;
  PathCost max_queries;
  std::size_t leaf_count = 0;
  double pruned_mass = 0.0;  // largest over inputs
};

/// Enumerates every input in {0,1}^n and measures the exact error mass of a
/// 0/1-valued algorithm against `truth`.
AlgorithmReport analyze(const Algorithm<int>& algorithm, int n, const std::function<int(const BitString&)>& truth,
                        const ExecutionConfig& config = {});

/// 0-query algorithm that outputs 1 with probability p.
Algorithm<int> biased_coin(double p);

/// compute_symmetric for non-constant f, the 0-query constant otherwise.
Algorithm<int> evaluate_symmetric(const SymmetricFunction& f, double eps);

}  // namespace qdeg
