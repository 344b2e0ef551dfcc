#include "qdeg/degree_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "qdeg/errors.hpp"
#include "qdeg/parallel.hpp"
#include "qdeg/simplex.hpp"

namespace qdeg {

namespace {

constexpr double kOneThird = 1.0 / 3.0;
// Residuals within this of the extreme one count as extreme points.
constexpr double kCertificateTolerance = 1e-7;

void check_eps(double eps, double upper, const char* what) {
  if (!(eps >= 0.0 && eps < upper)) throw ParameterError(std::string(what) + ": eps out of range");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Polynomial basis orthonormal on the weights 0..n (Vandermonde with
// Arnoldi on u = 2k/n - 1). Well conditioned for every degree, unlike any
// fixed basis sampled at equispaced points.
struct GridBasis {
  int n;
  int d;
  std::vector<std::vector<double>> q;  // q[j][k], columns scaled to norm sqrt(n+1)
  std::vector<std::vector<double>> h;  // h[j][i]: recurrence coefficients of column i+1

  GridBasis(int n_, int d_) : n(n_), d(d_) {
    const std::size_t pts = static_cast<std::size_t>(n) + 1;
    q.assign(static_cast<std::size_t>(d) + 1, std::vector<double>(pts, 1.0));
    h.assign(static_cast<std::size_t>(d) + 1, std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 1; i <= d; ++i) {
      std::vector<double> v(pts);
      for (std::size_t k = 0; k < pts; ++k) v[k] = u(static_cast<double>(k)) * q[static_cast<std::size_t>(i) - 1][k];
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < i; ++j) {
          double dot = 0.0;
          for (std::size_t k = 0; k < pts; ++k) dot += q[static_cast<std::size_t>(j)][k] * v[k];
          dot /= static_cast<double>(pts);
          h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) - 1] += dot;
          for (std::size_t k = 0; k < pts; ++k) v[k] -= dot * q[static_cast<std::size_t>(j)][k];
        }
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm / static_cast<double>(pts));
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) - 1] = norm;
      for (std::size_t k = 0; k < pts; ++k) q[static_cast<std::size_t>(i)][k] = v[k] / norm;
    }
  }

  double u(double k) const { return 2.0 * k / n - 1.0; }

  // Values of all basis polynomials at an arbitrary weight.
  std::vector<double> at(double k) const {
    std::vector<double> w(static_cast<std::size_t>(d) + 1, 1.0);
    for (int i = 1; i <= d; ++i) {
      double v = u(k) * w[static_cast<std::size_t>(i) - 1];
      for (int j = 0; j < i; ++j) v -= h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) - 1] * w[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = v / h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) - 1];
    }
    return w;
  }

  // Chebyshev coefficients on [0, n] of sum_j g_j q_j, from values at d+1
  // Chebyshev points.
  std::vector<double> to_chebyshev(const std::vector<double>& g) const {
    const std::size_t m = static_cast<std::size_t>(d) + 1;
    const double pi = std::acos(-1.0);
    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::cos(pi * (static_cast<double>(i) + 0.5) / static_cast<double>(m));
      const auto w = at((x + 1.0) * n / 2.0);
      for (std::size_t j = 0; j < m; ++j) vals[i] += g[j] * w[j];
    }
    std::vector<double> c(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        c[j] += vals[i] * std::cos(pi * static_cast<double>(j) * (static_cast<double>(i) + 0.5) / static_cast<double>(m));
      }
      c[j] *= (j == 0 ? 1.0 : 2.0) / static_cast<double>(m);
    }
    return c;
  }
};

}  // namespace

MinimaxResult minimax_error(const SymmetricFunction& f, int d) {
  const int n = f.arity();
  if (d < 0 || d > n) throw ParameterError("minimax_error needs 0 <= d <= n");
  const auto spec = f.spectrum();
  const GridBasis basis(n, d);
  const std::size_t terms = static_cast<std::size_t>(d) + 1;
  // Variables g+, g-, h with e = 1 - h: g = 0, h = 0 is feasible, so the
  // solver never needs its artificial phase.
  const std::size_t vars = 2 * terms + 1;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    std::vector<double> up(vars, 0.0), down(vars, 0.0);
    for (std::size_t j = 0; j < terms; ++j) {
      const double qj = basis.q[j][k];
      up[j] = qj;
      up[terms + j] = -qj;
      down[j] = -qj;
      down[terms + j] = qj;
    }
    up[vars - 1] = 1.0;
    down[vars - 1] = 1.0;
    a.push_back(std::move(up));
    b.push_back(1.0 + spec[k]);
    a.push_back(std::move(down));
    b.push_back(1.0 - spec[k]);
  }
  std::vector<double> c(vars, 0.0);
  c[vars - 1] = 1.0;

  DenseSimplex lp(a, b, c);
  const LpSolution sol = lp.solve();
  if (sol.status != LpStatus::Optimal) {
    throw NumericalError("minimax LP for n=" + std::to_string(n) + ", d=" + std::to_string(d) + " ended " +
                         (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded") + " after " +
                         std::to_string(sol.pivots) + " pivots");
  }
  std::vector<double> g(terms);
  for (std::size_t j = 0; j < terms; ++j) g[j] = sol.x[j] - sol.x[terms + j];

  MinimaxResult r;
  r.degree = d;
  r.witness = UnivariatePoly::from_chebyshev(n, basis.to_chebyshev(g));
  std::vector<double> residual(static_cast<std::size_t>(n) + 1);  // of the LP solution on the grid
  double grid_error = 0.0;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    double v = 0.0;
    for (std::size_t j = 0; j < terms; ++j) v += g[j] * basis.q[j][k];
    residual[k] = v - spec[k];
    grid_error = std::max(grid_error, std::abs(residual[k]));
    r.error = std::max(r.error, std::abs(r.witness(static_cast<double>(k)) - spec[k]));
  }
  const double lp_error = 1.0 - sol.objective;
  if (grid_error > lp_error + 1e-6) {
    throw NumericalError("minimax LP for n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                         " stopped at an inconsistent vertex: objective " + format_double(lp_error) +
                         ", residual " + format_double(grid_error) + ", " + std::to_string(sol.pivots) + " pivots");
  }
  // The stored witness is what callers evaluate, so its own residual counts
  // toward the reported error. Converting to Chebyshev form adds round-off
  // (up to ~1e-8 once d is well above sqrt(n)); the certificate is read
  // from the LP solution itself, whose residuals on degenerate optima are
  // accurate to a few 1e-9.
  r.error = std::max(r.error, grid_error);
  if (grid_error > kCertificateTolerance) {
    for (int k = 0; k <= n; ++k) {
      const double res = residual[static_cast<std::size_t>(k)];
      if (std::abs(res) >= grid_error - kCertificateTolerance) r.certificate.push_back({k, res > 0 ? 1 : -1});
    }
  }
  return r;
}

int approx_degree(const SymmetricFunction& f, double eps) {
  check_eps(eps, 0.5, "approx_degree");
  const int n = f.arity();
  auto feasible = [&](int d) { return d == n || minimax_error(f, d).error <= eps + kFeasibilityTolerance; };
  // Galloping search for a feasible degree keeps the probes near the answer,
  // where the LP is well conditioned; then bisect using monotonicity of e*.
  int lo = 0, hi = 1;
  if (feasible(0)) return 0;
  while (hi < n && !feasible(hi)) {
    lo = hi;
    hi = std::min(n, 2 * hi);
  }
  ++lo;  // e*(lo - 1) > eps
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

LowerBoundReport lower_bound_check(const SymmetricFunction& f, double eps) {
  if (!(eps > 0.0 && eps <= kOneThird + 1e-12)) throw ParameterError("lower_bound_check needs 0 < eps <= 1/3");
  const int n = f.arity();
  const int t = jump_parameter(f);
  LowerBoundReport r;
  r.deg_eps = approx_degree(f, eps);
  r.deg_13 = approx_degree(f, kOneThird);
  r.passed = r.deg_eps >= r.deg_13;
  if (4 * t < n) {
    r.embedded = true;
    r.embedding = embed_or(f);
    r.deg_or = approx_degree(make_named({Family::Or, 0}, r.embedding.m), eps);
    r.passed = r.passed && r.deg_eps >= r.deg_or && embedding_holds(f, r.embedding);
  }
  return r;
}

namespace {

AcceptanceSurface surface_for(const Algorithm<int>& alg, int n, int max_n) {
  if (n > max_n) {
    throw ResourceError("upper_bound_check enumerates 2^n inputs; n=" + std::to_string(n) + " exceeds " +
                            std::to_string(max_n),
                        0.0);
  }
  return acceptance_surface(alg, n, {}, max_n);
}

UpperBoundReport check_surface(const AcceptanceSurface& s, double eps,
                               const std::function<int(const BitString&)>& truth) {
  UpperBoundReport r;
  r.two_t = 2 * static_cast<int>(s.max_queries.total);
  r.surface_degree = poly_degree(mobius_transform(s.values), kCoefficientTolerance);
  for (std::uint64_t x = 0; x < s.values.size(); ++x) {
    r.surface_error = std::max(r.surface_error, std::abs(s.values[x] - truth(BitString(s.n, x))));
  }
  r.poly_ok = r.surface_error <= eps + kFeasibilityTolerance;
  r.passed = r.poly_ok && r.surface_degree <= r.two_t;
  return r;
}

}  // namespace

UpperBoundReport upper_bound_check(const SymmetricFunction& f, double eps, int max_n) {
  check_eps(eps, 0.5, "upper_bound_check");
  if (eps <= 0.0) throw ParameterError("upper_bound_check needs eps > 0");
  const int n = f.arity();
  const AcceptanceSurface s = surface_for(evaluate_symmetric(f, eps), n, max_n);
  UpperBoundReport r = check_surface(s, eps, [&](const BitString& x) { return f(x); });
  const UnivariatePoly q = symmetrize(s.values, n);
  for (int k = 0; k <= n; ++k) r.symmetrized_error = std::max(r.symmetrized_error, std::abs(q(k) - f.at_weight(k)));
  r.poly_ok = r.poly_ok && r.symmetrized_error <= eps + kFeasibilityTolerance;
  r.deg_lp = approx_degree(f, eps);
  r.passed = r.poly_ok && r.surface_degree <= r.two_t && *r.deg_lp <= r.two_t && *r.deg_lp <= r.surface_degree;
  return r;
}

UpperBoundReport upper_bound_check(const PromiseFunction& f, double eps, int max_n) {
  check_eps(eps, 0.5, "upper_bound_check");
  if (eps <= 0.0) throw ParameterError("upper_bound_check needs eps > 0");
  const AcceptanceSurface s = surface_for(compute_promise(f, eps), f.arity(), max_n);
  return check_surface(s, eps, [&](const BitString& x) { return f(x); });
}

BandReport degree_band(const FamilySpec& family, std::span<const int> ns, std::span<const double> epss,
                        double width_bound, unsigned workers) {
  std::vector<int> grid_n(ns.begin(), ns.end());
  std::vector<double> grid_eps(epss.begin(), epss.end());
  std::sort(grid_n.begin(), grid_n.end());
  std::sort(grid_eps.rbegin(), grid_eps.rend());
  for (int n : grid_n) {
    for (double eps : grid_eps) {
      if (eps < std::ldexp(1.0, -n)) {
        throw ParameterError("degree_band: eps=" + format_double(eps) + " is below 2^-" + std::to_string(n));
      }
      if (eps > kOneThird + 1e-3 || eps <= 0.0) throw ParameterError("degree_band: eps must lie in [2^-n, 1/3]");
    }
  }
  const auto deg13 = parallel_map(
      grid_n.size(), [&](std::size_t i) { return approx_degree(make_named(family, grid_n[i]), kOneThird); }, workers);

  const std::size_t cols = grid_eps.size();
  BandReport report;
  report.width_bound = width_bound;
  report.rows = parallel_map(
      grid_n.size() * cols,
      [&](std::size_t idx) {
        const int n = grid_n[idx / cols];
        const double eps = grid_eps[idx % cols];
        const SymmetricFunction f = make_named(family, n);
        BandRow row;
        row.family = family.name();
        row.n = n;
        row.t = jump_parameter(f);
        row.eps = eps;
        row.deg_13 = deg13[idx / cols];
        row.deg_eps = approx_degree(f, eps);
        row.ratio = row.deg_eps / (row.deg_13 + std::sqrt(n * std::log(1.0 / eps)));
        row.e_star = minimax_error(f, row.deg_eps).error;
        row.in_band = 4 * row.t < n;
        return row;
      },
      workers);

  bool any = false;
  for (const auto& row : report.rows) {
    if (!row.in_band) continue;
    report.min_ratio = any ? std::min(report.min_ratio, row.ratio) : row.ratio;
    report.max_ratio = any ? std::max(report.max_ratio, row.ratio) : row.ratio;
    any = true;
  }
  report.within_width = !any || report.max_ratio <= width_bound * report.min_ratio;
  report.monotone_n = true;
  report.monotone_eps = true;
  for (std::size_t i = 0; i < grid_n.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& row = report.rows[i * cols + j];
      if (i > 0 && row.deg_eps < report.rows[(i - 1) * cols + j].deg_eps) report.monotone_n = false;
      if (j > 0 && row.deg_eps < report.rows[i * cols + j - 1].deg_eps) report.monotone_eps = false;
    }
  }
  return report;
}

ThresholdReport threshold_band(std::span<const int> taus, std::span<const int> ns, unsigned workers) {
  std::vector<std::pair<int, int>> grid;
  for (int tau : taus) {
    for (int n : ns) {
      if (tau >= 1 && tau <= n) grid.emplace_back(tau, n);
    }
  }
  ThresholdReport report;
  report.rows = parallel_map(
      grid.size(),
      [&](std::size_t i) {
        const auto [tau, n] = grid[i];
        const SymmetricFunction f = make_named({Family::Threshold, tau}, n);
        ThresholdRow row;
        row.tau = tau;
        row.n = n;
        row.t = jump_parameter(f);
        row.deg_13 = approx_degree(f, kOneThird);
        row.ratio = row.deg_13 / std::sqrt(static_cast<double>(row.t) * n);
        return row;
      },
      workers);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const double r = report.rows[i].ratio;
    report.min_ratio = i == 0 ? r : std::min(report.min_ratio, r);
    report.max_ratio = i == 0 ? r : std::max(report.max_ratio, r);
  }
  return report;
}

std::string csv_header() { return "family,n,t,eps,deg_eps,deg_13,ratio,e_star"; }

std::string to_csv(const BandRow& row) {
  return row.family + "," + std::to_string(row.n) + "," + std::to_string(row.t) + "," + format_double(row.eps) + "," +
         std::to_string(row.deg_eps) + "," + std::to_string(row.deg_13) + "," + format_double(row.ratio) + "," +
         format_double(row.e_star);
}

nlohmann::json to_json(const BandReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"family", r.family},
                    {"n", r.n},
                    {"t", r.t},
                    {"eps", r.eps},
                    {"deg_eps", r.deg_eps},
                    {"deg_13", r.deg_13},
                    {"ratio", r.ratio},
                    {"e_star", r.e_star},
                    {"in_band", r.in_band}});
  }
  return {{"min_ratio", report.min_ratio},   {"max_ratio", report.max_ratio},
          {"width_bound", report.width_bound}, {"within_width", report.within_width},
          {"monotone_n", report.monotone_n}, {"monotone_eps", report.monotone_eps},
          {"passed", report.passed()},       {"rows", rows}};
}

nlohmann::json to_json(const ThresholdReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"tau", r.tau}, {"n", r.n}, {"t", r.t}, {"deg_13", r.deg_13}, {"ratio", r.ratio}});
  }
  return {{"min_ratio", report.min_ratio}, {"max_ratio", report.max_ratio}, {"rows", rows}};
}

}  // namespace qdeg
