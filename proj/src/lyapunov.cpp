#include "cocyclelab/lyapunov.hpp"

#include <cmath>
#include <random>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

ExponentReport periodic_exponent(const CocycleSpec& spec, const PeriodicOrbit& orbit) {
  const int per = orbit.period();
  const ProductResult pr = product(spec, orbit.base_point(), per);
  // Eigenvalues of e^{ls} M for SL2 products: with u = |trace|/2 of the true
  // product, the dominant modulus is u + sqrt(u^2 - 1) when u > 1, else 1.
  const double tr_hat = pr.matrix.m00 + pr.matrix.m11;
  ExponentReport rep;
  rep.method = ExponentMethod::PeriodicExact;
  rep.horizon = per;
  double lambda = 0;
  if (tr_hat != 0) {
    const double log_u = pr.log_scale + std::log(std::fabs(tr_hat) / 2);
    if (log_u > 0) {
      // hyperbolic; acosh via the asymptotic form when exp would lose nothing
      lambda = (log_u > 20) ? (log_u + std::log(2.0)) / per
                            : std::acosh(std::exp(log_u)) / per;
    }
  }
  rep.lambda_plus = lambda;
  rep.lambda_minus = -lambda;
  return rep;
}

double finite_time_exponent(const CocycleSpec& spec, const SymbolSequence& x, long long n) {
  if (n < 1) fail(ErrorCode::Internal, "finite_time_exponent needs n >= 1");
  return product(spec, x, n).log_norm() / static_cast<double>(n);
}

GapScanReport gap_scan(const CocycleSpec& spec, int max_period, double tau,
                       std::size_t orbit_cap) {
  if (!spec.base().irreducible())
    fail(ErrorCode::NotIrreducible, "gap_scan requires an irreducible base");
  GapScanReport rep;
  rep.max_period = max_period;
  rep.tau = tau;
  auto orbits = enumerate_periodic(spec.base(), max_period, orbit_cap);
  auto lambdas = parallel_map(orbits, [&](const PeriodicOrbit& o) {
    return periodic_exponent(spec, o).lambda_plus;
  });
  rep.rows.reserve(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i)
    rep.rows.emplace_back(orbits[i], lambdas[i]);
  rep.min_lambda_plus = lambdas.empty() ? 0 : *std::min_element(lambdas.begin(), lambdas.end());
  rep.min_gap = 2 * rep.min_lambda_plus;
  rep.verdict = GapVerdict::Holds;
  for (const auto& row : rep.rows) {
    if (row.lambda_plus < tau) {
      rep.verdict = GapVerdict::Violated;
      rep.witness = row.orbit;  // rows are (period, word)-sorted: first is minimal
      break;
    }
  }
  return rep;
}

namespace {

struct StepSampler {
  const TransitionMatrix& q;
  const MeasureSpec& measure;

  double weight(Symbol from, Symbol to) const {
    if (from >= 0 && !q.edge(from, to)) return 0;
    if (measure.markov) {
      return from < 0 ? 1.0 / q.size() : (*measure.markov)[static_cast<std::size_t>(from)]
                                                          [static_cast<std::size_t>(to)];
    }
    return measure.bernoulli.empty() ? 1.0
                                     : measure.bernoulli[static_cast<std::size_t>(to)];
  }

  Symbol draw(Symbol from, std::mt19937_64& rng) const {
    double total = 0;
    for (Symbol s = 0; s < q.size(); ++s) total += weight(from, s);
    if (total <= 0) fail(ErrorCode::InvalidSpec, "measure assigns no admissible successor");
    std::uniform_real_distribution<double> u(0.0, total);
    double pick = u(rng);
    for (Symbol s = 0; s < q.size(); ++s) {
      pick -= weight(from, s);
      if (pick <= 0) return s;
    }
    return q.size() - 1;
  }
};

// Admissible periodic tail through `attach`: a cycle rotated so it can
// follow (right tail) or precede (left tail) that symbol.
Word cycle_through(const TransitionMatrix& q, Symbol attach) {
  Word cyc = connecting_word(q, attach, attach);
  cyc.push_back(attach);  // (c_1 .. c_{m-1}, attach): attach -> c_1 edge holds
  return cyc;
}

}  // namespace

SymbolSequence sample_point(const CocycleSpec& spec, const MeasureSpec& measure,
                            long long n, long long margin, std::uint64_t seed) {
  const TransitionMatrix& q = spec.base();
  std::mt19937_64 rng(seed);
  StepSampler sampler{q, measure};
  const long long lo = -margin - 1, hi = n + margin + 1;
  Word core(static_cast<std::size_t>(hi - lo + 1));
  Symbol prev = -1;
  for (long long i = 0; i < static_cast<long long>(core.size()); ++i) {
    prev = sampler.draw(prev, rng);
    core[static_cast<std::size_t>(i)] = prev;
  }
  const Word right = cycle_through(q, core.back());
  // Left tail: a cycle through the core's first symbol, placed so the seam
  // into the core is the cycle's own returning edge.
  const Symbol first = core.front();
  Word left = connecting_word(q, first, first);
  left.insert(left.begin(), first);  // (first, c_1 .. c_{m-1}); c_{m-1} -> first edge holds
  return SymbolSequence(left, core, lo, right);
}

ExponentReport sampled_exponent(const CocycleSpec& spec, const MeasureSpec& measure,
                                long long n, int trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::Internal, "sampled_exponent needs trials >= 1");
  long long window_radius = 0;
  if (spec.is_locally_constant())
    window_radius = std::max(std::abs(spec.table().window_lo), spec.table().window_hi);
  std::vector<int> idx(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto values = parallel_map(idx, [&](int i) {
    SymbolSequence x = sample_point(spec, measure, n, 2 * window_radius + 2,
                                    seed + 0x9e3779b97f4a7c15ull * (i + 1));
    return finite_time_exponent(spec, x, n);
  });
  double mean = 0;
  for (double v : values) mean += v;
  mean /= trials;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = trials > 1 ? var / (trials - 1) : 0;
  ExponentReport rep;
  rep.method = ExponentMethod::Sampled;
  rep.horizon = n;
  rep.trials = trials;
  rep.spread = std::sqrt(var);
  rep.lambda_plus = mean;
  rep.lambda_minus = -mean;
  return rep;
}

DominationReport domination_test(const CocycleSpec& spec,
                                 const std::vector<SymbolSequence>& samples, long long n_max,
                                 double residual_slack) {
  if (n_max < 2) fail(ErrorCode::Internal, "domination_test needs n_max >= 2");
  if (samples.empty()) fail(ErrorCode::EmptySearchSet, "domination_test needs samples");
  // Fit window [n_max/2, n_max] suppresses the transient; C absorbs the prefix.
  // SL2 reduction: sigma2/sigma1 = |A^n|^{-2}, evaluated in the log domain.
  std::vector<std::pair<double, double>> pts;  // (n, log sigma2/sigma1)
  for (const auto& x : samples) {
    for (long long n = n_max / 2; n <= n_max; ++n) {
      const ProductResult pr = product(spec, x, n);
      pts.emplace_back(static_cast<double>(n), -2 * pr.log_norm());
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [a, b] : pts) {
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * sxx - sx * sx;
  const double slope = denom != 0 ? (m * sxy - sx * sy) / denom : 0;
  const double intercept = (sy - slope * sx) / m;
  DominationReport rep;
  rep.log_c_fit = intercept;
  rep.tau_fit = std::exp(slope);
  for (auto [a, b] : pts)
    rep.max_residual = std::max(rep.max_residual, std::fabs(b - (intercept + slope * a)));
  rep.pass = rep.tau_fit < 1.0 && rep.max_residual <= residual_slack;
  return rep;
}

}  // namespace cocyclelab
