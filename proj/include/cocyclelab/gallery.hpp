#pragma once

#include <array>
#include <cstdint>

#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/lyapunov.hpp"

namespace cocyclelab {

// The diag-rotation counterexample over the binary full shift:
//   A(x) = diag(2, 1/2) * R_{theta(x)},
// with theta supported on V = {x_0 = 1}, pi/2 at the homoclinic point, and
// switched off below the rotation cutoff k0.
struct CounterexampleParams {
  int k0 = 0;
  double beta_scale = 1.0;  // test hook: != 1 corrupts the cone half-width

  // Cutoff computed by determine_k0 (cached after the first call).
  static const CounterexampleParams& standard();
};

struct K0Scan {
  int k0 = 0;
  std::array<int, 6> first_k_holding{};  // per inequality: least k where it holds
  std::array<const char*, 6> names{};
  bool monotone = false;  // each inequality keeps holding through k_max
  int k_max = 0;
};

// Smallest cutoff such that all six construction inequalities hold for every
// integer k > k0; scanned and monotonicity-checked numerically.
K0Scan determine_k0_scan(int k_max = 512);
int determine_k0();

// min{|n| : n != 0, x_n = 1}; nullopt means no other 1 exists (k = infinity).
std::optional<long long> k_of(const SymbolSequence& x);
std::optional<long long> k_of_at(const SymbolSequence& x, long long pos);

double theta(const SymbolSequence& x, const CounterexampleParams& p);

// The homoclinic point (...,0,0,1,0,0,...) and the zero fixed point.
SymbolSequence homoclinic_point();
SymbolSequence zero_fixed_point();

CocycleSpec make_builtin_spec(std::optional<int> k0_override = std::nullopt);

struct ReturnStep {
  SymbolSequence point;
  long long return_time = 0;  // first n >= 1 with x_n = 1
  std::optional<long long> k_here;
  std::optional<long long> k_next;
  SymbolSequence next_point;  // T_V x
  ProductResult induced;      // A^{N_V}(x)
  ReturnStep() : point(SymbolSequence::constant(0)), next_point(point) {}
};

// First return to V.  Throws NoReturn when the future contains no 1 at all;
// iterating returns stays defined exactly when the right tail has a 1.
ReturnStep first_return(const CocycleSpec& spec, const SymbolSequence& x);

// Lemma-4 cone at x (complement of the contracted band); requires x in V
// with k(x) > k0.  The k <= k0 regime uses horizontal_cone() instead.
ProjectiveArc cone_of(const SymbolSequence& x, const CounterexampleParams& p);
ProjectiveArc horizontal_cone();
// cone_of when the cone is defined, horizontal_cone() otherwise.
ProjectiveArc cone_or_bridge(const SymbolSequence& x, const CounterexampleParams& p);

struct ConeStepReport {
  long long return_time = 0;
  std::optional<long long> k_here, k_next;
  double inclusion_slack = 0;      // positive: image fits strictly inside target
  double log_growth = 0;           // log of min growth over the source cone
  double log_growth_required = 0;  // (N_V/2) log 2
  double tan_gamma = 0;            // image-arc boundary angle data
  double tan_gamma_bound = 0;      // 2^{-3N/2 - 1/8}
  double chain_value = 0;          // 2^{-k'/2}(2^{3k'/8} - 2^{1/4}), when defined
  bool pass = false;
  std::string failing;
};

// Checks the cone inclusion, the 2^{N_V/2} growth, and the intermediate
// inequalities of the invariant-cone lemma at one return step.  The throwing
// wrapper raises ConeStepViolated naming the failed inequality.
ConeStepReport check_cone_step(const CocycleSpec& spec, const SymbolSequence& x,
                               const CounterexampleParams& p);
ConeStepReport verify_cone_step(const CocycleSpec& spec, const SymbolSequence& x,
                                const CounterexampleParams& p);

struct NotUhReport {
  int n_max = 0;
  double max_norm_deviation = 0;  // max_n | |A^{2n}(T^{-n}q)| - 1 |
  std::vector<double> norms;
  std::vector<double> probe_taus;
  bool all_probes_falsified = false;
  bool pass = false;
};

// The homoclinic obstruction: products across the rotation return to norm
// one, so no uniform growth bound can hold.
NotUhReport verify_not_uh(const CocycleSpec& spec, int n_max);

struct OrbitTrackRecord {
  long long total_steps = 0;
  int returns = 0;
  double worst_margin = 0;  // min over returns of (log growth - required)
  bool pass = false;
};

struct ExponentBoundReport {
  GapScanReport gap;
  bool gap_pass = false;
  std::vector<std::pair<int, double>> deep_zero_family;  // (m, lambda_plus)
  bool deep_zero_pass = false;
  int tracked_points = 0;
  int tracked_pass = 0;
  double worst_track_margin = 0;
  bool track_pass = false;
  bool off_v_pass = false;
  bool pass = false;
};

// (a) periodic gap scan at log2/2, plus the deep-zero family (1 0^{2m});
// (b) orbitwise cone tracking of sampled V_0 points with cumulative growth
//     2^{(sum N_V)/2} asserted at every return;
// (c) off-V orbits carry finite-time exponent exactly log 2.
ExponentBoundReport verify_exponent_bound(const CocycleSpec& spec, int max_period,
                                          int sample_count, std::uint64_t seed);

}  // namespace cocyclelab
