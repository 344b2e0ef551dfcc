#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qdeg/branching.hpp"
#include "qdeg/phase_oracle.hpp"
#include "qdeg/search_state.hpp"

namespace qdeg {

/// sin^2((2T+1) theta) with theta = arcsin(sqrt(k/n)).
double success_probability(int n, int k, int iterations);

/// One Grover iterate: phase query, then reflection about the start state.
SearchState grover_iterate(SearchState state, PhaseOracle& oracle);

/// Iteration count and dummy padding for exact search assuming `assumed`
/// solutions among n: T = ceil(pi/(4 theta) - 1/2) and gamma chosen so the
/// padded angle is exactly pi/(4T+2).
struct ExactSchedule {
  int iterations = 0;
  double gamma = 0.0;
};
ExactSchedule exact_schedule(int n, double assumed);

/// Assumed counts of one halving pass: n/2, n/4, ... down to max(1, t_min).
std::vector<double> usual_schedule(int n, int t_min);

/// ceil(log2(1/eps)) and ceil(log2(2/eps)), the phase sizes of eps-error search.
int eps_exact_passes(double eps);
int eps_usual_repetitions(double eps);

/// State of one execution branch. Algorithms search for 1s through `ones`
/// and for 0s through `zeros` (a flipped oracle on the same x); each keeps
/// its own crossed-out set and query counters.
///
/// Branches that agree on everything but query counts are merged; `cost`
/// then holds the maxima over the merged paths.
struct SearchBranch {
  PhaseOracle ones;
  PhaseOracle zeros;
  int hit = 0;            // verified solution from the last search, 0 = none, < 0 = skip further searches
  int measured = 0;       // last measured index; recorded only when sampling
  bool invariant_held = true;
  std::uint8_t status = 0;  // scratch bits for composite algorithms
  PathCost cost;

  static SearchBranch start(const PhaseOracle& oracle);

  auto merge_key() const {
    return std::tuple(ones.input(), ones.flipped(), ones.crossed(), zeros.flipped(), zeros.crossed(), hit, measured,
                      invariant_held, status);
  }
  void absorb(const SearchBranch& other) {
    ones.merge_counters(other.ones);
    zeros.merge_counters(other.zeros);
    cost.absorb(other.cost);
  }
};

using OracleSlot = PhaseOracle SearchBranch::*;
using SearchEnsemble = Ensemble<SearchBranch>;

/// Exact-padded Grover assuming `assumed` solutions, then measure. With
/// `verify`, a measured index costs one query and sets `hit` only if it is a
/// solution; without it, `hit` is the raw measured index. Branches with a
/// nonzero `hit`, or with fewer than `assumed` indices left, are untouched.
void search_attempt(SearchEnsemble& ens, OracleSlot slot, double assumed, bool verify = true);

/// Runs exact search t times assuming t, t-1, ..., 1 remaining solutions,
/// crossing out every verified find.
void find_all_step(SearchEnsemble& ens, OracleSlot slot, int t);

/// One halving pass plus one repeat; stops at the first verified find.
void usual_grover_step(SearchEnsemble& ens, OracleSlot slot, int t_min);

/// Exact search for 1..ceil(log2(1/eps)) solutions, then usual search with
/// t_min = ceil(log2(1/eps)) repeated ceil(log2(2/eps)) times.
void eps_error_grover_step(SearchEnsemble& ens, OracleSlot slot, double eps);

/// A randomized query algorithm over SearchBranch states.
template <class R>
struct Algorithm {
  std::string name;
  std::function<void(SearchEnsemble&)> body;
  std::function<R(const SearchBranch& final, const PhaseOracle& initial)> result;
};

Algorithm<std::optional<int>> exact_grover(int k);
Algorithm<std::optional<int>> usual_grover(int t_min);
Algorithm<std::optional<int>> eps_error_grover(double eps);
/// Result is the mask of solutions found (bit i-1 for index i).
Algorithm<std::uint64_t> find_all(int t);

template <class R>
BranchTree<R> run_enumerated(const Algorithm<R>& algorithm, const PhaseOracle& oracle,
                             ExecutionConfig config = {}) {
  config.mode = ExecutionMode::Enumerated;
  Executor ex(config);
  SearchEnsemble ens(ex, SearchBranch::start(oracle));
  algorithm.body(ens);
  return ens.template collect<R>([&](const SearchBranch& b) { return algorithm.result(b, oracle); },
                                 [](const SearchBranch& b) { return b.cost; },
                                 [](const SearchBranch& b) { return b.invariant_held; });
}

template <class R>
SampledRun<R> run_sampled(const Algorithm<R>& algorithm, const PhaseOracle& oracle, std::uint64_t seed) {
  ExecutionConfig config;
  config.mode = ExecutionMode::Sampled;
  config.seed = seed;
  Executor ex(config);
  SearchEnsemble ens(ex, SearchBranch::start(oracle));
  algorithm.body(ens);
  const SearchBranch& last = ens.branches().front().first;
  return {algorithm.result(last, oracle), last.cost.tally(), ex.transcript()};
}

}  // namespace qdeg
