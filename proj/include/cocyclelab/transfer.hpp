#pragma once

#include "cocyclelab/holonomy.hpp"
#include "cocyclelab/lyapunov.hpp"

namespace cocyclelab {

struct SlowPointSearch {
  int max_period = 8;  // all phases of all orbits up to this period
  std::vector<SymbolSequence> extra_points;
};

struct SlowPoint {
  SymbolSequence point;
  double log_norm = 0;  // log |A^{n0}(x)|
  SlowPoint() : point(SymbolSequence::constant(0)) {}
};

// The point minimizing |A^{n0}(x)| over the search set.
SlowPoint find_slow_point(const CocycleSpec& spec, long long n0, const SlowPointSearch& search);

struct Shadow {
  PeriodicOrbit orbit;       // canonical orbit of the constructed word
  SymbolSequence p;          // the phase with p_n = word_n for n in [0, n0+n1)
  SymbolSequence y;          // bracket(p, x)
  Word connecting;           // c_1 .. c_{n1-1}
  long long n1 = 0;
  Shadow() : orbit(Word{0}), p(SymbolSequence::constant(0)), y(p) {}
};

// Periodic shadow through the orbit segment x_0..x_{n0} closed by the
// shortest connecting word, and the splice y = bracket(p, x).  Verifies the
// local stable/unstable memberships coordinatewise.
Shadow build_shadow(const CocycleSpec& spec, const SymbolSequence& x, long long n0);

struct TransferReport {
  long long n0 = 0, n1 = 0;
  double eps = 0;            // slow-growth rate the caller searched at
  double log_norm_x = 0;     // log |A^{n0}(x)|
  Word connecting;
  Word orbit_word;
  // |A^{n1}(T^{n0}p)|, |H^u|, |H^s|, |H^s|, |H^u| (the five bounded factors)
  std::array<double, 5> factor_norms{};
  double log_c = 0;  // log of C = max of the five factor norms
  double identity_residual = 0;  // relative, against A^{n0+n1}(p)
  double holonomy_error_budget = 0;
  double log_bound_product = 0;  // log(C^5 |A^{n0}(x)|)
  double lambda_plus_p = 0;      // exact periodic exponent of the shadow
  double exponent_bound = 0;     // (5 log C + log|A^{n0}(x)|) / (n0+n1)
  double eps_bound = 0;          // (5 log C + n0 eps) / (n0+n1)
  bool bound_holds = false;
};

// Computes the six-factor reconstruction of A^{n0+n1}(p), measures C, and
// checks the whole inequality chain down to the exponent bound on p.  Throws
// NotBunched, and IdentityResidualExceeded when the reconstruction misses by
// more than the holonomy error budget allows.
TransferReport transfer_bound(const CocycleSpec& spec, const SymbolSequence& x,
                              const Shadow& shadow, long long n0, double eps,
                              double tol = 1e-9);

// find_slow_point -> build_shadow -> transfer_bound.
TransferReport run_transfer(const CocycleSpec& spec, long long n0, double eps,
                            const SlowPointSearch& search, double tol = 1e-9);

}  // namespace cocyclelab
