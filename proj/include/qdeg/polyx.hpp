#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "qdeg/grover.hpp"
#include "qdeg/symfun.hpp"

namespace qdeg {

/// Coefficient below which a multilinear coefficient counts as zero.
inline constexpr double kCoefficientTolerance = 1e-8;

/// Acceptance probability of an algorithm on every input of {0,1}^n, indexed
/// by the input's bit mask.
struct AcceptanceSurface {
  int n = 0;
  std::vector<double> values;
  PathCost max_queries;      // over all inputs and branches
  double pruned_mass = 0.0;  // largest over inputs
};

/// Branch-enumerates `algorithm` on all 2^n inputs. Throws ResourceError if
/// n exceeds `max_n`.
AcceptanceSurface acceptance_surface(const Algorithm<int>& algorithm, int n, const ExecutionConfig& config = {},
                                     int max_n = 10);

/// p(x) = sum over S of a_S * prod_{i in S} x_i. Coefficient of S is stored
/// at the index whose bit i-1 is set for each i in S.
class MultilinearPoly {
 public:
  MultilinearPoly(int n, std::vector<double> coefficients);

  int arity() const { return n_; }
  std::span<const double> coefficients() const { return coeffs_; }
  double coefficient(std::uint64_t subset) const { return coeffs_.at(subset); }

  /// Value at a Boolean point.
  double operator()(std::uint64_t x) const;
  /// Value at a real point (x_1, ..., x_n).
  double operator()(std::span<const double> point) const;

  nlohmann::json to_json(double tol = kCoefficientTolerance) const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// a_S = sum over T subset of S of (-1)^{|S \ T|} values(T).
MultilinearPoly mobius_transform(std::span<const double> values);

/// Largest |S| with |a_S| > tol.
int poly_degree(const MultilinearPoly& p, double tol = 0.0);

/// Polynomial on [0, n] stored in the Chebyshev basis T_j(2k/n - 1).
class UnivariatePoly {
 public:
  UnivariatePoly() = default;

  static UnivariatePoly from_chebyshev(int n, std::vector<double> coefficients);
  /// Interpolates values at k = 0..n (Newton forward differences, then a
  /// change of basis).
  static UnivariatePoly interpolate(std::span<const double> values);

  int domain() const { return n_; }
  std::span<const double> coefficients() const { return coeffs_; }
  double operator()(double k) const;

  nlohmann::json to_json(double tol = kCoefficientTolerance) const;

 private:
  UnivariatePoly(int n, std::vector<double> coefficients) : n_(n), coeffs_(std::move(coefficients)) {}

  int n_ = 1;
  std::vector<double> coeffs_{0.0};
};

/// Chebyshev polynomial T_j evaluated at weight k mapped from [0, n] to [-1, 1].
double shifted_chebyshev(int j, double k, int n);

/// q(k) = mean of `values` over inputs of Hamming weight k.
UnivariatePoly symmetrize(std::span<const double> values, int n);
/// Same via the coefficient sums A_j = sum_{|S|=j} a_S: q(k) = sum_j A_j C(k,j)/C(n,j).
UnivariatePoly symmetrize(const MultilinearPoly& p);

/// Degree from the trailing forward differences at integer points.
int univariate_degree(const UnivariatePoly& q, double tol = kCoefficientTolerance);
/// Exact degree of f's spectrum interpolant (integer finite differences).
int exact_degree(const SymmetricFunction& f);

}  // namespace qdeg
