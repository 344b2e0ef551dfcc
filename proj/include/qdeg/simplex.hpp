#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qdeg {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Revised simplex for
///   maximize c^T x  subject to  A x <= b,  x >= 0.
/// Two phases with a single artificial variable. Pricing picks the largest
/// scaled reduced cost and falls back to Bland's rule after a run of
/// degenerate pivots; leaving ties go to the smallest label. The basis is
/// refactorized (LU with partial pivoting) at every iteration, so no tableau
/// error accumulates.
/// Throws NumericalError when the pivot limit is reached.
class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b, const std::vector<double>& c);

  LpSolution solve(std::size_t max_pivots = 100000);

 private:
  enum class Outcome { Optimal, Unbounded };

  // Maximizes cost^T z over the full column set; columns with
  // allowed[j] == false never enter.
  Outcome optimize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed);
  Eigen::MatrixXd basis_matrix() const;

  std::size_t m_;
  std::size_t n_;
  std::size_t artificial_;
  Eigen::MatrixXd f_;  // [A | I | -1]
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::size_t pivots_ = 0;
  std::size_t max_pivots_ = 0;
};

}  // namespace qdeg
