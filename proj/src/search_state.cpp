#include "qdeg/search_state.hpp"

#include <cmath>
#include <numeric>

#include "qdeg/errors.hpp"
#include "qdeg/phase_oracle.hpp"

namespace qdeg {

SearchState::SearchState(int n, double gamma) : n_(n), gamma_(gamma) {
  if (n < 1) throw ParameterError("search space needs n >= 1");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ParameterError("padding gamma must lie in [0, 1)");
  real_amp_ = std::sqrt((1.0 - gamma) / n);
  dummy_amp_ = std::sqrt(gamma);
  amp_.assign(static_cast<std::size_t>(n) + 1, real_amp_);
  amp_.back() = dummy_amp_;
}

double SearchState::norm_squared() const {
  return std::inner_product(amp_.begin(), amp_.end(), amp_.begin(), 0.0);
}

double SearchState::solution_mass(const PhaseOracle& oracle) const {
  double mass = 0.0;
  for (int i = 1; i <= n_; ++i) {
    if (oracle.is_solution(i)) mass += at(i) * at(i);
  }
  return mass;
}

void SearchState::reflect_about_start() {
  double overlap = dummy_amp_ * amp_.back();
  double real_sum = 0.0;
  for (int i = 0; i < n_; ++i) real_sum += amp_[static_cast<std::size_t>(i)];
  overlap += real_amp_ * real_sum;
  for (int i = 0; i < n_; ++i) {
    auto& a = amp_[static_cast<std::size_t>(i)];
    a = 2.0 * overlap * real_amp_ - a;
  }
  amp_.back() = 2.0 * overlap * dummy_amp_ - amp_.back();
}

}  // namespace qdeg
