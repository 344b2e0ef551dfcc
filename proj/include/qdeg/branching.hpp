#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qdeg/errors.hpp"

namespace qdeg {

enum class ExecutionMode { Sampled, Enumerated };

struct ExecutionConfig {
  ExecutionMode mode = ExecutionMode::Enumerated;
  std::uint64_t seed = 0;
  /// Branches whose path probability is <= this are dropped and their mass
  /// reported as pruned. 0 keeps every branch of positive probability.
  double prune_threshold = 0.0;
  /// Maximum number of live branches an ensemble may hold.
  std::size_t node_budget = std::size_t{1} << 20;
};

/// Query counts along one execution path.
struct Tally {
  std::uint32_t grover = 0;
  std::uint32_t verify = 0;

  std::uint32_t total() const { return grover + verify; }
  Tally& operator+=(const Tally& o) {
    grover += o.grover;
    verify += o.verify;
    return *this;
  }
  auto operator<=>(const Tally&) const = default;
};

/// Query counts of a path, or the component-wise maxima over merged paths.
/// `total` is tracked on its own so that it stays the exact maximum of
/// grover + verify over the merged paths.
struct PathCost {
  std::uint32_t grover = 0;
  std::uint32_t verify = 0;
  std::uint32_t total = 0;

  void add(std::uint32_t g, std::uint32_t v) {
    grover += g;
    verify += v;
    total += g + v;
  }
  void absorb(const PathCost& o) {
    grover = std::max(grover, o.grover);
    verify = std::max(verify, o.verify);
    total = std::max(total, o.total);
  }
  Tally tally() const { return {grover, verify}; }
  auto operator<=>(const PathCost&) const = default;
};

template <class R>
struct Leaf {
  R result{};
  double probability = 0.0;
  /// Maximum query counts over the paths ending in this leaf.
  PathCost queries;
  /// False if some path into this leaf broke a loop invariant the algorithm audits.
  bool invariant_held = true;
};

/// Exact outcome distribution of a randomized run. Paths with the same
/// result (and audit flag) share a leaf.
template <class R>
struct BranchTree {
  std::vector<Leaf<R>> leaves;
  double pruned_mass = 0.0;
  std::size_t expansions = 0;

  double total_mass() const {
    double m = 0.0;
    for (const auto& l : leaves) m += l.probability;
    return m;
  }

  template <class Pred>
  double mass_where(Pred pred) const {
    double m = 0.0;
    for (const auto& l : leaves) {
      if (pred(l.result)) m += l.probability;
    }
    return m;
  }

  double mass_of(const R& value) const {
    return mass_where([&](const R& r) { return r == value; });
  }

  PathCost max_queries() const {
    PathCost c;
    for (const auto& l : leaves) c.absorb(l.queries);
    return c;
  }
  std::uint32_t max_total_queries() const { return max_queries().total; }

  bool invariant_held_everywhere() const {
    return std::all_of(leaves.begin(), leaves.end(), [](const auto& l) { return l.invariant_held; });
  }
};

template <class R>
struct SampledRun {
  R result{};
  Tally queries;
  std::vector<std::string> transcript;
};

/// Shared execution context: sampling stream, pruning policy and counters.
class Executor {
 public:
  explicit Executor(const ExecutionConfig& config) : config_(config), rng_(config.seed) {}

  const ExecutionConfig& config() const { return config_; }
  bool sampling() const { return config_.mode == ExecutionMode::Sampled; }

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  void note(std::string event) {
    if (sampling()) transcript_.push_back(std::move(event));
  }
  const std::vector<std::string>& transcript() const { return transcript_; }

  void add_pruned(double mass) { pruned_mass_ += mass; }
  double pruned_mass() const { return pruned_mass_; }
  void add_expansions(std::size_t k) { expansions_ += k; }
  std::size_t expansions() const { return expansions_; }

 private:
  ExecutionConfig config_;
  std::mt19937_64 rng_;
  std::vector<std::string> transcript_;
  double pruned_mass_ = 0.0;
  std::size_t expansions_ = 0;
};

/// Outcomes of one randomized step from a single branch.
template <class State>
class Outcomes {
 public:
  void add(State s, double p) {
    if (p > 0.0) items_.emplace_back(std::move(s), p);
  }
  std::vector<std::pair<State, double>>& items() { return items_; }

 private:
  std::vector<std::pair<State, double>> items_;
};

/// States exposing merge_key()/absorb() are merged when their keys agree;
/// otherwise whole states must compare equal.
template <class S>
concept MergeableState = requires(const S& a, S& b) {
  a.merge_key();
  b.absorb(a);
};

/// Weighted population of execution branches.
///
/// In enumerated mode every outcome is kept and equivalent states are merged; in
/// sampled mode the population is a single branch and each step draws one
/// outcome from the executor's stream. Algorithms are written once against
/// advance()/transform() and run unchanged in both modes.
template <class State>
class Ensemble {
 public:
  Ensemble(Executor& executor, State initial) : executor_(&executor) {
    branches_.emplace_back(std::move(initial), 1.0);
  }

  Executor& executor() { return *executor_; }
  const std::vector<std::pair<State, double>>& branches() const { return branches_; }

  /// step(const State&, Outcomes<State>&) lists the successors of a branch
  /// with conditional probabilities.
  template <class Step>
  void advance(Step&& step) {
    Executor& ex = *executor_;
    if (ex.sampling()) {
      Outcomes<State> out;
      step(std::as_const(branches_.front().first), out);
      auto& items = out.items();
      ex.add_expansions(items.size());
      if (items.empty()) throw NumericalError("sampled step produced no outcome");
      double total = 0.0;
      for (const auto& it : items) total += it.second;
      const double u = ex.uniform01() * total;
      double acc = 0.0;
      std::size_t pick = items.size() - 1;
      for (std::size_t i = 0; i < items.size(); ++i) {
        acc += items[i].second;
        if (u < acc) {
          pick = i;
          break;
        }
      }
      branches_.front().first = std::move(items[pick].first);
      return;
    }
    const double threshold = ex.config().prune_threshold;
    Merger merger;
    for (const auto& [state, weight] : branches_) {
      Outcomes<State> out;
      step(state, out);
      ex.add_expansions(out.items().size());
      for (auto& [succ, p] : out.items()) {
        const double mass = weight * p;
        if (mass <= threshold) {
          ex.add_pruned(mass);
          continue;
        }
        merger.add(std::move(succ), mass);
      }
      if (merger.size() > ex.config().node_budget) {
        throw ResourceError("branch enumeration exceeded node budget of " +
                                std::to_string(ex.config().node_budget),
                            merger.mass());
      }
    }
    branches_ = merger.release();
  }

  /// Deterministic map over branches; equal images are merged.
  template <class Fn>
  void transform(Fn&& fn) {
    advance([&](const State& s, Outcomes<State>& out) { out.add(fn(s), 1.0); });
  }

  template <class R, class ResultFn, class CostFn, class InvariantFn>
  BranchTree<R> collect(ResultFn&& result, CostFn&& cost, InvariantFn&& invariant) const {
    std::map<std::pair<R, bool>, Leaf<R>> merged;
    for (const auto& [state, weight] : branches_) {
      const bool ok = invariant(state);
      auto [it, fresh] = merged.try_emplace({result(state), ok});
      Leaf<R>& leaf = it->second;
      if (fresh) {
        leaf.result = it->first.first;
        leaf.invariant_held = ok;
        leaf.queries = cost(state);
      } else {
        leaf.queries.absorb(cost(state));
      }
      leaf.probability += weight;
    }
    BranchTree<R> tree;
    for (auto& kv : merged) tree.leaves.push_back(std::move(kv.second));
    tree.pruned_mass = executor_->pruned_mass();
    tree.expansions = executor_->expansions();
    return tree;
  }

 private:
  class Merger {
   public:
    void add(State s, double mass) {
      if constexpr (MergeableState<State>) {
        auto key = s.merge_key();
        auto [it, fresh] = slots_.try_emplace(std::move(key), std::move(s), mass);
        if (!fresh) {
          it->second.first.absorb(s);
          it->second.second += mass;
        }
      } else {
        slots_[std::move(s)] += mass;
      }
    }
    std::size_t size() const { return slots_.size(); }
    double mass() const {
      double m = 0.0;
      for (const auto& kv : slots_) m += weight_of(kv);
      return m;
    }
    std::vector<std::pair<State, double>> release() {
      std::vector<std::pair<State, double>> out;
      out.reserve(slots_.size());
      for (auto& kv : slots_) {
        if constexpr (MergeableState<State>) {
          out.push_back(std::move(kv.second));
        } else {
          out.emplace_back(kv.first, kv.second);
        }
      }
      return out;
    }

   private:
    template <class KV>
    static double weight_of(const KV& kv) {
      if constexpr (MergeableState<State>) {
        return kv.second.second;
      } else {
        return kv.second;
      }
    }
    static auto key_type_probe() {
      if constexpr (MergeableState<State>) {
        return std::map<decltype(std::declval<const State&>().merge_key()), std::pair<State, double>>{};
      } else {
        return std::map<State, double>{};
      }
    }
    decltype(key_type_probe()) slots_;
  };

  Executor* executor_;
  std::vector<std::pair<State, double>> branches_;
};

}  // namespace qdeg
