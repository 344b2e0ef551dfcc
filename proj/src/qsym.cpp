#include "qdeg/qsym.hpp"

#include <bit>
#include <cmath>

#include "qdeg/errors.hpp"

namespace qdeg {

namespace {

constexpr std::uint8_t kLowClaim = 1;
constexpr std::uint8_t kHighClaim = 2;
constexpr int kSkip = -1;

// Steps 1-2 (or 3-4) on one side. Sets `claim` when fewer than t solutions
// were found and the eps/2-error search found no further one.
void search_side(SearchEnsemble& ens, OracleSlot slot, int t, double eps_half, std::uint8_t claim) {
  find_all_step(ens, slot, t);
  ens.transform([&](SearchBranch b) {
    if (std::popcount((b.*slot).crossed()) >= t) b.hit = kSkip;
    return b;
  });
  eps_error_grover_step(ens, slot, eps_half);
  ens.transform([&](SearchBranch b) {
    if (b.hit == 0) {
      b.status |= claim;
    } else {
      // Without a claim the found set is never read again; dropping it lets
      // equivalent branches merge.
      (b.*slot).clear_crossed();
    }
    b.hit = 0;
    return b;
  });
}

void classify_body(SearchEnsemble& ens, int t, double eps) {
  const int n = ens.branches().front().first.ones.size();
  if (t < 1 || t > n / 2 + 1) throw ParameterError("classify_weight needs 1 <= t <= floor(n/2)+1");
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("classify_weight needs eps in (0, 1/2)");
  if (ens.branches().front().first.ones.crossed() != 0) throw ParameterError("classify_weight needs a fresh oracle");
  search_side(ens, &SearchBranch::ones, t, eps / 2.0, kLowClaim);
  search_side(ens, &SearchBranch::zeros, t, eps / 2.0, kHighClaim);
}

WeightClassification verdict_of(const SearchBranch& b) {
  const int n = b.ones.size();
  if (b.status & kLowClaim) return {Regime::Low, BitString(n, b.ones.crossed())};
  if (b.status & kHighClaim) return {Regime::High, BitString(n, ~b.zeros.crossed())};
  return {Regime::Middle, std::nullopt};
}

int find_all_cost(int n, int t) {
  int cost = 0;
  for (int i = 1; i <= std::min(t, n); ++i) cost += exact_schedule(n, i).iterations + 1;
  return cost;
}

// Worst case of eps_error_grover_step when it runs `exact_passes` exact
// searches; every search may end in a verified miss.
int eps_search_cost(int n, int exact_passes) {
  int cost = 0;
  for (int k = 1; k <= std::min(exact_passes, n); ++k) cost += exact_schedule(n, k).iterations + 1;
  int pass = 0;
  for (double k : usual_schedule(n, exact_passes)) pass += exact_schedule(n, k).iterations + 1;
  // ceil(log2(2/eps)) = ceil(log2(1/eps)) + 1 repetitions, two passes each.
  return cost + (exact_passes + 1) * 2 * pass;
}

int side_cost(int n, int t, double eps_half) {
  return find_all_cost(n, t) + eps_search_cost(n, eps_exact_passes(eps_half));
}

}  // namespace

Algorithm<WeightClassification> classify_weight(int t, double eps) {
  if (t < 1) throw ParameterError("classify_weight needs t >= 1");
  return {"classify_weight", [t, eps](SearchEnsemble& ens) { classify_body(ens, t, eps); },
          [](const SearchBranch& b, const PhaseOracle&) { return verdict_of(b); }};
}

Algorithm<int> compute_symmetric(const SymmetricFunction& f, double eps) {
  const int t = jump_parameter(f);
  return {"compute_symmetric",
          [f, t, eps](SearchEnsemble& ens) {
            if (ens.branches().front().first.ones.size() != f.arity()) {
              throw ParameterError("oracle length does not match the function's arity");
            }
            classify_body(ens, t, eps);
          },
          [f, t](const SearchBranch& b, const PhaseOracle&) {
            const auto v = verdict_of(b);
            if (v.recovered) return f(*v.recovered);
            return f.at_weight(std::min(t, f.arity()));
          }};
}

PromiseFunction::PromiseFunction(int n, int t, int middle_value, std::map<std::uint64_t, std::uint8_t> low_table,
                                 std::map<std::uint64_t, std::uint8_t> high_table)
    : n_(n), t_(t), middle_(middle_value), low_(std::move(low_table)), high_(std::move(high_table)) {
  if (n < 1 || n > BitString::kMaxBits) throw ParameterError("promise function needs 1 <= n <= 64");
  if (t < 1 || t > n / 2 + 1) throw ParameterError("promise function needs 1 <= t <= floor(n/2)+1");
  if (middle_value != 0 && middle_value != 1) throw ParameterError("middle value must be 0 or 1");
}

PromiseFunction PromiseFunction::tabulate(int n, int t, int middle_value,
                                          const std::function<int(const BitString&)>& rule) {
  if (n < 1 || n > 24) throw ParameterError("tabulate enumerates 2^n inputs; needs 1 <= n <= 24");
  std::map<std::uint64_t, std::uint8_t> low, high;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const BitString x(n, bits);
    if (x.weight() < t) low[bits] = static_cast<std::uint8_t>(rule(x));
    if (x.weight() > n - t) high[bits] = static_cast<std::uint8_t>(rule(x));
  }
  return PromiseFunction(n, t, middle_value, std::move(low), std::move(high));
}

int PromiseFunction::operator()(const BitString& x) const {
  if (x.size() != n_) throw ParameterError("input length does not match arity");
  const int w = x.weight();
  auto lookup = [&](const std::map<std::uint64_t, std::uint8_t>& table, const char* which) {
    const auto it = table.find(x.bits());
    if (it == table.end()) throw SpecificationError(std::string(which) + " table has no entry for " + x.to_string());
    return static_cast<int>(it->second);
  };
  if (w < t_) return lookup(low_, "low");
  if (w > n_ - t_) return lookup(high_, "high");
  return middle_;
}

Algorithm<int> compute_promise(const PromiseFunction& f, double eps) {
  return {"compute_promise",
          [f, eps](SearchEnsemble& ens) {
            if (ens.branches().front().first.ones.size() != f.arity()) {
              throw ParameterError("oracle length does not match the function's arity");
            }
            classify_body(ens, f.jump(), eps);
          },
          [f](const SearchBranch& b, const PhaseOracle&) {
            const auto v = verdict_of(b);
            return v.recovered ? f(*v.recovered) : f.middle_value();
          }};
}

int query_budget(int n, int t, double eps) {
  if (n < 1 || t < 1 || t > n / 2 + 1) throw ParameterError("query_budget needs n >= 1 and 1 <= t <= floor(n/2)+1");
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("query_budget needs eps in (0, 1/2)");
  return 2 * side_cost(n, t, eps / 2.0);
}

AlgorithmReport analyze(const Algorithm<int>& algorithm, int n, const std::function<int(const BitString&)>& truth,
                        const ExecutionConfig& config) {
  if (n < 1 || n > 20) throw ResourceError("analyze enumerates 2^n inputs; n must be in [1, 20]", 0.0);
  AlgorithmReport report;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const BitString x(n, bits);
    const PhaseOracle oracle(x);
    const auto tree = run_enumerated(algorithm, oracle, config);
    InputReport in;
    in.input = x;
    in.expected = truth(x);
    in.error_mass = tree.mass_where([&](int r) { return r != in.expected; });
    in.max_queries = tree.max_queries();
    in.leaves = tree.leaves.size();
    in.pruned_mass = tree.pruned_mass;

    report.worst_error = std::max(report.worst_error, in.error_mass);
    report.max_queries.absorb(in.max_queries);
    report.leaf_count += in.leaves;
    report.pruned_mass = std::max(report.pruned_mass, in.pruned_mass);
    report.inputs.push_back(in);
  }
  return report;
}

Algorithm<int> biased_coin(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("coin bias must lie in [0, 1]");
  return {"biased_coin",
          [p](SearchEnsemble& ens) {
            ens.advance([p](const SearchBranch& b, Outcomes<SearchBranch>& out) {
              SearchBranch heads = b;
              heads.status = 1;
              out.add(std::move(heads), p);
              out.add(b, 1.0 - p);
            });
          },
          [](const SearchBranch& b, const PhaseOracle&) { return b.status == 1 ? 1 : 0; }};
}

Algorithm<int> evaluate_symmetric(const SymmetricFunction& f, double eps) {
  if (f.is_constant()) return biased_coin(f.at_weight(0));
  return compute_symmetric(f, eps);
}

}  // namespace qdeg
