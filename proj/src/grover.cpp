#include "qdeg/grover.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdeg/errors.hpp"

namespace qdeg {

namespace {

constexpr double kPi = std::numbers::pi;
// Measurement probabilities at or below this are floating-point residue of
// amplitudes that are zero in exact arithmetic.
constexpr double kRoundoffMass = 1e-20;

// Negative hits are skip markers set by callers and survive.
void reset_hits(SearchEnsemble& ens) {
  ens.transform([](SearchBranch b) {
    if (b.hit > 0) b.hit = 0;
    return b;
  });
}

void usual_pass(SearchEnsemble& ens, OracleSlot slot, int t_min) {
  const int n = (ens.branches().front().first.*slot).size();
  for (double k : usual_schedule(n, t_min)) search_attempt(ens, slot, k);
}

int ceil_log2(double v) {
  // Guard exact powers of two against rounding in log2.
  return std::max(1, static_cast<int>(std::ceil(std::log2(v) - 1e-12)));
}

}  // namespace

double success_probability(int n, int k, int iterations) {
  if (n < 1 || k < 0 || k > n || iterations < 0) throw ParameterError("success_probability: need n >= 1, 0 <= k <= n, T >= 0");
  const double theta = std::asin(std::sqrt(static_cast<double>(k) / n));
  const double s = std::sin((2.0 * iterations + 1.0) * theta);
  return s * s;
}

SearchState grover_iterate(SearchState state, PhaseOracle& oracle) {
  if (state.size() != oracle.size()) throw ParameterError("state and oracle sizes differ");
  oracle.apply_phase(state);
  state.reflect_about_start();
  return state;
}

ExactSchedule exact_schedule(int n, double assumed) {
  if (n < 1 || !(assumed > 0.0) || assumed > n) throw ParameterError("exact search needs 0 < assumed <= n");
  const double theta = std::asin(std::sqrt(assumed / n));
  ExactSchedule s;
  s.iterations = std::max(0, static_cast<int>(std::ceil(kPi / (4.0 * theta) - 0.5 - 1e-9)));
  const double phi = kPi / (4.0 * s.iterations + 2.0);
  const double sp = std::sin(phi);
  s.gamma = std::clamp(1.0 - n * sp * sp / assumed, 0.0, 1.0 - 1e-15);
  return s;
}

std::vector<double> usual_schedule(int n, int t_min) {
  if (n < 1) throw ParameterError("usual_schedule: n must be >= 1");
  const double floor_count = std::max(1, t_min);
  std::vector<double> ks;
  for (double k = n / 2.0; k >= floor_count; k /= 2.0) ks.push_back(k);
  if (ks.empty()) {
    ks.push_back(n / 2.0);
  } else if (ks.back() > floor_count && floor_count <= n) {
    ks.push_back(floor_count);
  }
  return ks;
}

int eps_exact_passes(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  return ceil_log2(1.0 / eps);
}

int eps_usual_repetitions(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  return ceil_log2(2.0 / eps);
}

SearchBranch SearchBranch::start(const PhaseOracle& oracle) {
  SearchBranch b;
  b.ones = oracle;
  b.zeros = PhaseOracle(oracle.input(), !oracle.flipped());
  return b;
}

void search_attempt(SearchEnsemble& ens, OracleSlot slot, double assumed, bool verify) {
  const bool sampling = ens.executor().sampling();
  int iterations = -1;
  ens.advance([&](const SearchBranch& b, Outcomes<SearchBranch>& out) {
    const PhaseOracle& current = b.*slot;
    if (b.hit != 0 || assumed > current.available()) {
      out.add(b, 1.0);
      return;
    }
    const int n = current.size();
    const ExactSchedule sched = exact_schedule(n, assumed);
    iterations = sched.iterations;

    SearchBranch base = b;
    base.measured = 0;
    PhaseOracle& oracle = base.*slot;
    SearchState state = SearchState::padded(n, sched.gamma);
    for (int i = 0; i < sched.iterations; ++i) state = grover_iterate(std::move(state), oracle);
    base.cost.add(static_cast<std::uint32_t>(sched.iterations), 0);

    const double dummy = state.dummy() * state.dummy();
    if (dummy > kRoundoffMass) out.add(base, dummy);
    double miss = 0.0;
    int miss_index = 0;
    for (int i = 1; i <= n; ++i) {
      const double p = state.at(i) * state.at(i);
      if (p <= kRoundoffMass) continue;
      if (!verify || oracle.is_solution(i) || sampling) {
        SearchBranch s = base;
        if (verify) {
          s.hit = (s.*slot).verify(i) ? i : 0;
          s.cost.add(0, 1);
        } else {
          s.hit = i;
        }
        if (sampling) s.measured = i;
        out.add(std::move(s), p);
      } else {
        // Rejected candidates lead to identical states; lump them.
        miss += p;
        miss_index = i;
      }
    }
    if (miss > kRoundoffMass) {
      SearchBranch s = base;
      (s.*slot).verify(miss_index);
      s.cost.add(0, 1);
      out.add(std::move(s), miss);
    }
  });
  if (sampling && iterations >= 0) {
    const SearchBranch& b = ens.branches().front().first;
    std::ostringstream ev;
    ev << "search side=" << (slot == &SearchBranch::ones ? "ones" : "zeros") << " assumed=" << assumed
       << " T=" << iterations << " measured=" << (b.measured ? std::to_string(b.measured) : "dummy")
       << " hit=" << b.hit;
    ens.executor().note(ev.str());
  }
}

void find_all_step(SearchEnsemble& ens, OracleSlot slot, int t) {
  if (t < 1) throw ParameterError("find_all needs t >= 1");
  reset_hits(ens);
  for (int run = 1; run <= t; ++run) {
    const int assumed = t - run + 1;
    search_attempt(ens, slot, assumed);
    ens.transform([&](SearchBranch b) {
      PhaseOracle& oracle = b.*slot;
      const int before = oracle.solution_count();
      if (b.hit > 0) {
        oracle.cross_out(b.hit);
        b.hit = 0;
      }
      // Downward induction: if the assumption bounded the remaining count
      // before this run, the next assumption bounds it after.
      if (before <= assumed && oracle.solution_count() > assumed - 1) b.invariant_held = false;
      return b;
    });
  }
}

void usual_grover_step(SearchEnsemble& ens, OracleSlot slot, int t_min) {
  if (t_min < 1) throw ParameterError("usual Grover needs t_min >= 1");
  reset_hits(ens);
  usual_pass(ens, slot, t_min);
  usual_pass(ens, slot, t_min);
}

void eps_error_grover_step(SearchEnsemble& ens, OracleSlot slot, double eps) {
  const int exact_passes = eps_exact_passes(eps);
  const int repetitions = eps_usual_repetitions(eps);
  reset_hits(ens);
  const int n = (ens.branches().front().first.*slot).size();
  for (int k = 1; k <= std::min(exact_passes, n); ++k) search_attempt(ens, slot, k);
  for (int r = 0; r < repetitions; ++r) {
    usual_pass(ens, slot, exact_passes);
    usual_pass(ens, slot, exact_passes);
  }
}

namespace {

std::optional<int> hit_of(const SearchBranch& b, const PhaseOracle&) {
  return b.hit ? std::optional<int>(b.hit) : std::nullopt;
}

}  // namespace

Algorithm<std::optional<int>> exact_grover(int k) {
  if (k < 1) throw ParameterError("exact Grover needs k >= 1");
  return {"exact_grover",
          [k](SearchEnsemble& ens) {
            if (k > ens.branches().front().first.ones.size()) throw ParameterError("exact Grover needs k <= n");
            reset_hits(ens);
            search_attempt(ens, &SearchBranch::ones, k, /*verify=*/false);
          },
          hit_of};
}

Algorithm<std::optional<int>> usual_grover(int t_min) {
  if (t_min < 1) throw ParameterError("usual Grover needs t_min >= 1");
  return {"usual_grover", [t_min](SearchEnsemble& ens) { usual_grover_step(ens, &SearchBranch::ones, t_min); },
          hit_of};
}

Algorithm<std::optional<int>> eps_error_grover(double eps) {
  eps_exact_passes(eps);
  return {"eps_error_grover", [eps](SearchEnsemble& ens) { eps_error_grover_step(ens, &SearchBranch::ones, eps); },
          hit_of};
}

Algorithm<std::uint64_t> find_all(int t) {
  if (t < 1) throw ParameterError("find_all needs t >= 1");
  return {"find_all", [t](SearchEnsemble& ens) { find_all_step(ens, &SearchBranch::ones, t); },
          [](const SearchBranch& b, const PhaseOracle& initial) { return b.ones.crossed() & ~initial.crossed(); }};
}

}  // namespace qdeg
