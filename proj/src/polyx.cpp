#include "qdeg/polyx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qdeg/errors.hpp"

namespace qdeg {

namespace {

std::size_t table_size(int n) { return std::size_t{1} << n; }

int arity_of_table(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) throw ParameterError("table size must be a power of two");
  return std::countr_zero(size);
}

// (a*u + b) * c for a Chebyshev series c in u.
std::vector<double> times_linear(const std::vector<double>& c, double a, double b) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t m = 0; m < c.size(); ++m) {
    out[m] += b * c[m];
    if (m == 0) {
      out[1] += a * c[0];
    } else {
      out[m + 1] += 0.5 * a * c[m];
      out[m - 1] += 0.5 * a * c[m];
    }
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

AcceptanceSurface acceptance_surface(const Algorithm<int>& algorithm, int n, const ExecutionConfig& config, int max_n) {
  if (n < 1) throw ParameterError("acceptance_surface needs n >= 1");
  if (n > max_n) {
    throw ResourceError("acceptance surface over 2^" + std::to_string(n) + " inputs exceeds the budget n <= " +
                            std::to_string(max_n),
                        0.0);
  }
  AcceptanceSurface s;
  s.n = n;
  s.values.resize(table_size(n));
  for (std::uint64_t x = 0; x < table_size(n); ++x) {
    const auto tree = run_enumerated(algorithm, PhaseOracle(BitString(n, x)), config);
    s.values[x] = tree.mass_of(1);
    s.max_queries.absorb(tree.max_queries());
    s.pruned_mass = std::max(s.pruned_mass, tree.pruned_mass);
  }
  return s;
}

MultilinearPoly::MultilinearPoly(int n, std::vector<double> coefficients) : n_(n), coeffs_(std::move(coefficients)) {
  if (n < 0 || n > 30 || coeffs_.size() != table_size(n)) throw ParameterError("multilinear polynomial needs 2^n coefficients");
}

double MultilinearPoly::operator()(std::uint64_t x) const {
  x &= BitString::full_mask(n_);
  double sum = coeffs_[0];
  for (std::uint64_t s = x; s != 0; s = (s - 1) & x) sum += coeffs_[s];
  return sum;
}

double MultilinearPoly::operator()(std::span<const double> point) const {
  if (point.size() != static_cast<std::size_t>(n_)) throw ParameterError("point has the wrong dimension");
  double sum = 0.0;
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s] == 0.0) continue;
    double term = coeffs_[s];
    for (int i = 0; i < n_; ++i) {
      if ((s >> i) & 1U) term *= point[static_cast<std::size_t>(i)];
    }
    sum += term;
  }
  return sum;
}

nlohmann::json MultilinearPoly::to_json(double tol) const {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (std::abs(coeffs_[s]) <= tol) continue;
    std::vector<int> subset;
    for (int i = 0; i < n_; ++i) {
      if ((s >> i) & 1U) subset.push_back(i + 1);
    }
    terms.push_back({{"subset", subset}, {"value", coeffs_[s]}});
  }
  return {{"basis", "multilinear-subset"},
          {"n", n_},
          {"tolerance", tol},
          {"degree", poly_degree(*this, tol)},
          {"coefficients", terms}};
}

MultilinearPoly mobius_transform(std::span<const double> values) {
  const int n = arity_of_table(values.size());
  std::vector<double> a(values.begin(), values.end());
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (s & bit) a[s] -= a[s ^ bit];
    }
  }
  return MultilinearPoly(n, std::move(a));
}

int poly_degree(const MultilinearPoly& p, double tol) {
  int degree = 0;
  const auto c = p.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (std::abs(c[s]) > tol) degree = std::max(degree, std::popcount(s));
  }
  return degree;
}

double shifted_chebyshev(int j, double k, int n) {
  const double u = 2.0 * k / n - 1.0;
  double prev = 1.0;
  if (j == 0) return prev;
  double cur = u;
  for (int m = 1; m < j; ++m) {
    const double next = 2.0 * u * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

UnivariatePoly UnivariatePoly::from_chebyshev(int n, std::vector<double> coefficients) {
  if (n < 1) throw ParameterError("univariate polynomial needs a domain [0, n] with n >= 1");
  if (coefficients.empty()) coefficients.push_back(0.0);
  return UnivariatePoly(n, std::move(coefficients));
}

UnivariatePoly UnivariatePoly::interpolate(std::span<const double> values) {
  if (values.size() < 2) throw ParameterError("interpolation needs values at k = 0..n with n >= 1");
  const int n = static_cast<int>(values.size()) - 1;
  std::vector<double> diff(values.begin(), values.end());
  std::vector<double> leading(diff.size());
  for (std::size_t j = 0; j < diff.size(); ++j) {
    leading[j] = diff[0];
    for (std::size_t i = 0; i + 1 < diff.size() - j; ++i) diff[i] = diff[i + 1] - diff[i];
  }
  // Horner in the Newton basis: q = d_0 + k/1 (d_1 + (k-1)/2 (d_2 + ...)),
  // with k = (n/2)(u + 1).
  std::vector<double> c{leading[static_cast<std::size_t>(n)]};
  for (int j = n - 1; j >= 0; --j) {
    c = times_linear(c, (n / 2.0) / (j + 1), (n / 2.0 - j) / (j + 1));
    c[0] += leading[static_cast<std::size_t>(j)];
  }
  c.resize(static_cast<std::size_t>(n) + 1);
  return UnivariatePoly(n, std::move(c));
}

double UnivariatePoly::operator()(double k) const {
  // Clenshaw recurrence.
  const double u = 2.0 * k / n_ - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 1;) {
    const double b0 = coeffs_[j] + 2.0 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + u * b1 - b2;
}

nlohmann::json UnivariatePoly::to_json(double tol) const {
  return {{"basis", "chebyshev"},
          {"domain", {0, n_}},
          {"tolerance", tol},
          {"degree", univariate_degree(*this, tol)},
          {"coefficients", coeffs_}};
}

UnivariatePoly symmetrize(std::span<const double> values, int n) {
  if (values.size() != table_size(n)) throw ParameterError("symmetrize needs a complete table over {0,1}^n");
  std::vector<double> sum(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> count(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t x = 0; x < values.size(); ++x) {
    sum[static_cast<std::size_t>(std::popcount(x))] += values[x];
    count[static_cast<std::size_t>(std::popcount(x))] += 1.0;
  }
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] /= count[k];
  return UnivariatePoly::interpolate(sum);
}

UnivariatePoly symmetrize(const MultilinearPoly& p) {
  const int n = p.arity();
  if (n < 1) throw ParameterError("symmetrize needs n >= 1");
  std::vector<double> level(static_cast<std::size_t>(n) + 1, 0.0);
  const auto c = p.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) level[static_cast<std::size_t>(std::popcount(s))] += c[s];
  std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) q[static_cast<std::size_t>(k)] += level[static_cast<std::size_t>(j)] * binomial(k, j) / binomial(n, j);
  }
  return UnivariatePoly::interpolate(q);
}

int univariate_degree(const UnivariatePoly& q, double tol) {
  const auto m = q.coefficients().size();
  std::vector<double> d(m);
  for (std::size_t k = 0; k < m; ++k) d[k] = q(static_cast<double>(k));
  int degree = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(d[0]) > tol) degree = static_cast<int>(j);
    for (std::size_t i = 0; i + 1 < m - j; ++i) d[i] = d[i + 1] - d[i];
  }
  return degree;
}

int exact_degree(const SymmetricFunction& f) {
  const int n = f.arity();
  if (n > 62) throw ParameterError("exact_degree supports n <= 62");
  std::vector<std::int64_t> d(f.spectrum().begin(), f.spectrum().end());
  int degree = 0;
  for (int j = 0; j <= n; ++j) {
    if (d[0] != 0) degree = j;
    for (int i = 0; i + 1 < static_cast<int>(d.size()) - j; ++i) d[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i) + 1] - d[static_cast<std::size_t>(i)];
  }
  return degree;
}

}  // namespace qdeg
