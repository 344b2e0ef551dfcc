#include "qdeg/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdeg/errors.hpp"

namespace qdeg {

namespace {
constexpr double kCostTol = 1e-9;  // relative to the column's scale
constexpr double kPivotTol = 1e-9;
constexpr double kRatioTol = 1e-12;
constexpr double kFeasTol = 1e-9;
constexpr std::size_t kStallLimit = 50;
}  // namespace

DenseSimplex::DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                           const std::vector<double>& c)
    : m_(b.size()), n_(c.size()), artificial_(n_ + m_) {
  if (a.size() != m_) throw ParameterError("constraint matrix and bound vector disagree in size");
  f_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_ + m_ + 1));
  b_.resize(static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < m_; ++i) {
    if (a[i].size() != n_) throw ParameterError("constraint row has the wrong width");
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n_; ++j) f_(r, static_cast<Eigen::Index>(j)) = a[i][j];
    f_(r, static_cast<Eigen::Index>(n_ + i)) = 1.0;
    f_(r, static_cast<Eigen::Index>(artificial_)) = -1.0;
    b_(r) = b[i];
  }
  c_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_ + m_ + 1));
  for (std::size_t j = 0; j < n_; ++j) c_(static_cast<Eigen::Index>(j)) = c[j];
  basis_.resize(m_);
  in_basis_.assign(n_ + m_ + 1, false);
  for (std::size_t i = 0; i < m_; ++i) {
    basis_[i] = n_ + i;
    in_basis_[n_ + i] = true;
  }
}

Eigen::MatrixXd DenseSimplex::basis_matrix() const {
  Eigen::MatrixXd bm(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < m_; ++i) bm.col(static_cast<Eigen::Index>(i)) = f_.col(static_cast<Eigen::Index>(basis_[i]));
  return bm;
}

DenseSimplex::Outcome DenseSimplex::optimize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
  const std::size_t cols = n_ + m_ + 1;
  std::size_t degenerate_run = 0;
  for (;;) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
    const Eigen::VectorXd xb = lu.solve(b_);
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) cb(static_cast<Eigen::Index>(i)) = cost(static_cast<Eigen::Index>(basis_[i]));
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    const Eigen::VectorXd y_abs = y.cwiseAbs();

    // Largest scaled reduced cost; Bland's smallest label during a degenerate stall.
    const bool bland = degenerate_run >= kStallLimit;
    std::size_t enter = cols;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (in_basis_[j] || !allowed[j]) continue;
      const auto col = f_.col(static_cast<Eigen::Index>(j));
      const double cj = cost(static_cast<Eigen::Index>(j));
      const double scale = 1.0 + std::abs(cj) + y_abs.dot(col.cwiseAbs());
      const double gain = (cj - y.dot(col)) / scale;
      if (gain <= kCostTol) continue;
      if (enter == cols || (!bland && gain > best_gain)) {
        enter = j;
        best_gain = gain;
      }
      if (bland) break;
    }
    if (enter == cols) return Outcome::Optimal;

    const Eigen::VectorXd dir = lu.solve(f_.col(static_cast<Eigen::Index>(enter)));
    std::size_t leave = m_;
    double best = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double di = dir(static_cast<Eigen::Index>(i));
      if (di <= kPivotTol) continue;
      const double ratio = std::max(0.0, xb(static_cast<Eigen::Index>(i))) / di;
      if (leave == m_ || ratio < best - kRatioTol || (ratio <= best + kRatioTol && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m_) return Outcome::Unbounded;
    if (++pivots_ > max_pivots_) {
      throw NumericalError("simplex pivot limit " + std::to_string(max_pivots_) + " reached on a " +
                           std::to_string(m_) + "x" + std::to_string(n_) + " problem");
    }
    degenerate_run = best <= kRatioTol ? degenerate_run + 1 : 0;
    in_basis_[basis_[leave]] = false;
    basis_[leave] = enter;
    in_basis_[enter] = true;
  }
}

LpSolution DenseSimplex::solve(std::size_t max_pivots) {
  max_pivots_ = max_pivots;
  pivots_ = 0;
  LpSolution out;
  const std::size_t cols = n_ + m_ + 1;

  if (m_ > 0) {
    Eigen::Index worst = 0;
    const double lowest = b_.minCoeff(&worst);
    if (lowest < -kFeasTol) {
      // Entering the artificial at the most violated row makes every slack
      // nonnegative.
      const auto w = static_cast<std::size_t>(worst);
      in_basis_[basis_[w]] = false;
      basis_[w] = artificial_;
      in_basis_[artificial_] = true;
      ++pivots_;
      Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols));
      phase1(static_cast<Eigen::Index>(artificial_)) = -1.0;
      if (optimize(phase1, std::vector<bool>(cols, true)) == Outcome::Unbounded) {
        throw NumericalError("simplex phase one reported an unbounded direction after " + std::to_string(pivots_) +
                             " pivots; the basis is numerically singular");
      }

      const Eigen::MatrixXd bm = basis_matrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
      const Eigen::VectorXd xb = lu.solve(b_);
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] == artificial_ && xb(static_cast<Eigen::Index>(i)) > kFeasTol) {
          out.status = LpStatus::Infeasible;
          out.pivots = pivots_;
          return out;
        }
      }
      // Drive a zero-level artificial out of the basis if any column can replace it.
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != artificial_) continue;
        const Eigen::VectorXd row = lu.transpose().solve(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(i)));
        for (std::size_t j = 0; j < cols; ++j) {
          if (in_basis_[j]) continue;
          if (std::abs(row.dot(f_.col(static_cast<Eigen::Index>(j)))) > kPivotTol) {
            in_basis_[artificial_] = false;
            basis_[i] = j;
            in_basis_[j] = true;
            ++pivots_;
            break;
          }
        }
      }
    }
  }

  std::vector<bool> allowed(cols, true);
  allowed[artificial_] = false;
  if (optimize(c_, allowed) == Outcome::Unbounded) {
    out.status = LpStatus::Unbounded;
    out.objective = std::numeric_limits<double>::infinity();
    out.pivots = pivots_;
    return out;
  }
  const Eigen::MatrixXd bm = basis_matrix();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
  Eigen::VectorXd xb = lu.solve(b_);
  // Degenerate optima can leave an ill-conditioned final basis; refinement
  // recovers most of the lost digits in the reported point.
  for (int step = 0; step < 3; ++step) xb += lu.solve(b_ - bm * xb);
  out.status = LpStatus::Optimal;
  out.x.assign(n_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < n_) out.x[basis_[i]] = std::max(0.0, xb(static_cast<Eigen::Index>(i)));
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n_; ++j) out.objective += c_(static_cast<Eigen::Index>(j)) * out.x[j];
  out.pivots = pivots_;
  return out;
}

}  // namespace qdeg
