#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>

#include "qdeg/bitstring.hpp"

namespace qdeg {

class SearchState;

/// Query access to x. An index i is an effective solution when
/// (x_i XOR flipped) = 1 and i has not been crossed out.
///
/// Every call that touches x through a query (apply_phase, verify) bumps a
/// counter; the is_solution/solution_count accessors are simulator-side
/// bookkeeping and cost nothing.
class PhaseOracle {
 public:
  PhaseOracle() = default;
  explicit PhaseOracle(BitString x, bool flipped = false) : x_(x), flipped_(flipped) {}

  int size() const { return x_.size(); }
  const BitString& input() const { return x_; }
  bool flipped() const { return flipped_; }
  std::uint64_t crossed() const { return crossed_; }

  /// Treat index i as a non-solution from now on.
  void cross_out(int i);
  /// Drops every crossing-out; query counters are kept.
  void clear_crossed() { crossed_ = 0; }

  std::uint64_t solutions() const;
  int solution_count() const;
  bool is_solution(int i) const;
  /// Indices not yet crossed out.
  int available() const;

  /// One query: negates the amplitude of every effective solution.
  void apply_phase(SearchState& state);
  /// One query: reads whether candidate i is an effective solution.
  bool verify(int i);

  std::uint32_t grover_queries() const { return grover_queries_; }
  std::uint32_t verify_queries() const { return verify_queries_; }
  std::uint32_t queries() const { return grover_queries_ + verify_queries_; }

  /// Same x, polarity and crossed-out set; counters are not compared.
  bool same_configuration(const PhaseOracle& o) const {
    return x_ == o.x_ && flipped_ == o.flipped_ && crossed_ == o.crossed_;
  }
  /// Keeps the larger of each counter (used when merging branches).
  void merge_counters(const PhaseOracle& o) {
    grover_queries_ = std::max(grover_queries_, o.grover_queries_);
    verify_queries_ = std::max(verify_queries_, o.verify_queries_);
  }

  auto operator<=>(const PhaseOracle&) const = default;

 private:
  BitString x_;
  bool flipped_ = false;
  std::uint64_t crossed_ = 0;
  std::uint32_t grover_queries_ = 0;
  std::uint32_t verify_queries_ = 0;
};

}  // namespace qdeg
