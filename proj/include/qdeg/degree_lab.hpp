#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdeg/polyx.hpp"
#include "qdeg/qsym.hpp"
#include "qdeg/symfun.hpp"

namespace qdeg {

/// Slack allowed on e* <= eps when deciding a degree.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct EquioscillationPoint {
  int weight = 0;
  int sign = 0;  // sign of witness(k) - spectrum[k]
};

struct MinimaxResult {
  int degree = 0;
  double error = 0.0;  // largest residual of the witness
  UnivariatePoly witness;
  std::vector<EquioscillationPoint> certificate;  // residual extremes; empty when error <= 1e-7
};

/// Best uniform approximation of the spectrum at weights 0..n by a
/// polynomial of degree <= d. The LP runs in a basis orthonormal on the
/// weights; the witness is returned in Chebyshev form.
MinimaxResult minimax_error(const SymmetricFunction& f, int d);

/// Smallest d with e*(d) <= eps + 1e-9.
int approx_degree(const SymmetricFunction& f, double eps);

struct LowerBoundReport {
  bool embedded = false;  // false: jump t >= n/4, only the eps-monotonicity check runs
  OrEmbedding embedding;
  int deg_eps = 0;
  int deg_or = 0;  // approx_degree(OR_m, eps) when embedded
  int deg_13 = 0;
  bool passed = false;
};

/// Requires eps <= 1/3.
LowerBoundReport lower_bound_check(const SymmetricFunction& f, double eps);

struct UpperBoundReport {
  std::optional<int> deg_lp;  // absent for non-symmetric targets
  int two_t = 0;              // 2 * max branch queries
  int surface_degree = 0;     // poly_degree(surface, 1e-8)
  double surface_error = 0.0;       // max over inputs of |p(x) - f(x)|
  double symmetrized_error = 0.0;   // max over weights, symmetric targets only
  bool poly_ok = false;
  bool passed = false;
};

/// Runs the algorithm on all inputs, extracts its acceptance polynomial and
/// checks it against f and against the LP degree. Requires n <= max_n.
UpperBoundReport upper_bound_check(const SymmetricFunction& f, double eps, int max_n = 8);
UpperBoundReport upper_bound_check(const PromiseFunction& f, double eps, int max_n = 8);

struct BandRow {
  std::string family;
  int n = 0;
  int t = 0;
  double eps = 0.0;
  int deg_eps = 0;
  int deg_13 = 0;
  double ratio = 0.0;
  double e_star = 0.0;
  bool in_band = true;  // false when t >= n/4
};

struct BandReport {
  std::vector<BandRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double width_bound = 0.0;
  bool within_width = false;  // max/min <= width_bound
  bool monotone_n = false;
  bool monotone_eps = false;
  bool passed() const { return within_width && monotone_n && monotone_eps; }
};

/// deg_eps / (deg_{1/3} + sqrt(n ln(1/eps))) over the grid. Refuses
/// eps < 2^-n or eps > 1/3.
BandReport degree_band(const FamilySpec& family, std::span<const int> ns, std::span<const double> epss,
                        double width_bound, unsigned workers = 0);

struct ThresholdRow {
  int tau = 0;
  int n = 0;
  int t = 0;
  int deg_13 = 0;
  double ratio = 0.0;  // deg_13 / sqrt(t n)
};

struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// deg_{1/3}(THRESHOLD(tau)) / sqrt(t n) with t the jump parameter.
ThresholdReport threshold_band(std::span<const int> taus, std::span<const int> ns, unsigned workers = 0);

std::string csv_header();
std::string to_csv(const BandRow& row);
nlohmann::json to_json(const BandReport& report);
nlohmann::json to_json(const ThresholdReport& report);

}  // namespace qdeg
