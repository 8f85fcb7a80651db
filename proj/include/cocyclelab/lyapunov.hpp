#pragma once

#include <cstdint>
#include <optional>

#include "cocyclelab/cocycle.hpp"

namespace cocyclelab {

enum class ExponentMethod { PeriodicExact, FiniteTime, Sampled };

struct ExponentReport {
  double lambda_plus = 0;   // nats per step
  double lambda_minus = 0;  // = -lambda_plus for SL2
  ExponentMethod method = ExponentMethod::PeriodicExact;
  long long horizon = 0;  // period, or finite-time n
  int trials = 0;         // sampled mode only
  double spread = 0;      // sample standard deviation, sampled mode only
};

// Exact exponent of a periodic orbit from the eigenvalues of the period
// product; no limits involved.  Elliptic/parabolic period matrices
// (|trace| <= 2) give exactly zero.
ExponentReport periodic_exponent(const CocycleSpec& spec, const PeriodicOrbit& orbit);

// (1/n) log |A^n(x)|.
double finite_time_exponent(const CocycleSpec& spec, const SymbolSequence& x, long long n);

enum class GapVerdict { Holds, Violated };

struct GapScanRow {
  PeriodicOrbit orbit;
  double lambda_plus;
  GapScanRow() : orbit(Word{0}), lambda_plus(0) {}
  GapScanRow(PeriodicOrbit o, double l) : orbit(std::move(o)), lambda_plus(l) {}
};

struct GapScanReport {
  int max_period = 0;
  double tau = 0;
  std::vector<GapScanRow> rows;  // exactly the enumerate_periodic output order
  double min_lambda_plus = 0;
  double min_gap = 0;  // 2 * min lambda_plus
  GapVerdict verdict = GapVerdict::Holds;
  std::optional<PeriodicOrbit> witness;  // minimal-period violator
};

GapScanReport gap_scan(const CocycleSpec& spec, int max_period, double tau,
                       std::size_t orbit_cap = 1u << 20);

// Per-symbol sampling weights; Markov rows override the Bernoulli vector
// when present.  Weights are conditioned on admissibility at each step.
struct MeasureSpec {
  std::vector<double> bernoulli;
  std::optional<std::vector<std::vector<double>>> markov;
};

ExponentReport sampled_exponent(const CocycleSpec& spec, const MeasureSpec& measure,
                                long long n, int trials, std::uint64_t seed);

// Draws one admissible eventually-periodic point whose core covers
// [-margin, n + margin]; used by the sampler and by randomized tests.
SymbolSequence sample_point(const CocycleSpec& spec, const MeasureSpec& measure,
                            long long n, long long margin, std::uint64_t seed);

struct DominationReport {
  double log_c_fit = 0;
  double tau_fit = 0;       // fitted per-step ratio decay; < 1 required
  double max_residual = 0;  // in log units, over the fit window
  bool pass = false;
};

// Fits log(sigma2/sigma1)(A^n(x)) = log C + n log tau over the sampled
// points with n in [n_max/2, n_max].
DominationReport domination_test(const CocycleSpec& spec,
                                 const std::vector<SymbolSequence>& samples, long long n_max,
                                 double residual_slack = 0.3);

}  // namespace cocyclelab
