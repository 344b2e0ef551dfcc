#pragma once

#include <span>
#include <vector>

namespace qdeg {

class PhaseOracle;

/// Real amplitudes over indices 1..n plus one dummy coordinate (stored last).
///
/// The start state puts sqrt(gamma) on the dummy and spreads sqrt(1-gamma)
/// uniformly over the real indices; gamma = 0 is the plain uniform
/// superposition. The diffusion step reflects about this start state.
class SearchState {
 public:
  static SearchState uniform(int n) { return SearchState(n, 0.0); }
  static SearchState padded(int n, double gamma) { return SearchState(n, gamma); }

  int size() const { return n_; }
  double gamma() const { return gamma_; }
  std::span<const double> amplitudes() const { return amp_; }
  std::span<double> amplitudes() { return amp_; }
  double dummy() const { return amp_.back(); }
  /// Amplitude at 1-based index i.
  double at(int i) const { return amp_[static_cast<std::size_t>(i - 1)]; }

  double norm_squared() const;
  /// Probability that measuring yields an effective solution of `oracle`.
  double solution_mass(const PhaseOracle& oracle) const;

  /// psi -> 2<s|psi> s - psi.
  void reflect_about_start();

 private:
  SearchState(int n, double gamma);

  int n_;
  double gamma_;
  double real_amp_;   // start amplitude on each real index
  double dummy_amp_;  // start amplitude on the dummy
  std::vector<double> amp_;
};

}  // namespace qdeg
