#include "qdeg/phase_oracle.hpp"

#include <bit>

#include "qdeg/search_state.hpp"

namespace qdeg {

void PhaseOracle::cross_out(int i) {
  x_.check_index(i);
  crossed_ |= std::uint64_t{1} << (i - 1);
}

std::uint64_t PhaseOracle::solutions() const {
  const std::uint64_t hot = flipped_ ? x_.complement().bits() : x_.bits();
  return hot & ~crossed_;
}

int PhaseOracle::solution_count() const { return std::popcount(solutions()); }

bool PhaseOracle::is_solution(int i) const {
  x_.check_index(i);
  return (solutions() >> (i - 1)) & 1U;
}

int PhaseOracle::available() const { return size() - std::popcount(crossed_); }

void PhaseOracle::apply_phase(SearchState& state) {
  ++grover_queries_;
  auto amp = state.amplitudes();
  std::uint64_t hot = solutions();
  while (hot) {
    const int bit = std::countr_zero(hot);
    amp[static_cast<std::size_t>(bit)] = -amp[static_cast<std::size_t>(bit)];
    hot &= hot - 1;
  }
}

bool PhaseOracle::verify(int i) {
  ++verify_queries_;
  return is_solution(i);
}

}  // namespace qdeg
