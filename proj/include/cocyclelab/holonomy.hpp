#pragma once

#include "cocyclelab/cocycle.hpp"

namespace cocyclelab {

enum class HolonomySide { Stable, Unstable };

struct HolonomyResult {
  Mat2 matrix;
  long long n_used = 0;
  double error_bound = 0;  // operator-norm bound on the discarded tail
  HolonomySide side = HolonomySide::Stable;
};

struct HolonomyOptions {
  double tol = 1e-10;
  // Forces the truncated-limit route even where a telescoped finite product
  // is exact; used to validate the stopping rule against the exact value.
  bool force_iterative = false;
};

// H^s_{x<-y} = lim A^n(x)^{-1} A^n(y) for y in W^s(x).  Locally constant
// cocycles telescope: beyond step |window_lo| (after pushing global pairs
// into local position) all factors cancel and the finite product is exact.
// Throws NotBunched / NotOnStableSet.
HolonomyResult stable_holonomy(const CocycleSpec& spec, const SymbolSequence& x,
                               const SymbolSequence& y, const HolonomyOptions& opts = {});

// Mirror image along backward products, for y in W^u(x).
HolonomyResult unstable_holonomy(const CocycleSpec& spec, const SymbolSequence& x,
                                 const SymbolSequence& y, const HolonomyOptions& opts = {});

// Least m >= 0 with T^m y in W^s_loc(T^m x) (coordinates agree from m on);
// nullopt when y is not on the stable set of x.  Unstable mirror.
std::optional<long long> stable_push(const SymbolSequence& x, const SymbolSequence& y);
std::optional<long long> unstable_push(const SymbolSequence& x, const SymbolSequence& y);

struct IdentityReport {
  double composition_residual = 0;   // |H_{x<-y} - H_{x<-z} H_{z<-y}|
  double intertwining_residual = 0;  // |A(x) H^s_{x<-y} - H^s_{Tx<-Ty} A(y)|
  double holder_ratio = 0;           // |H_{x<-y} - I| / d(x,y)^alpha (0 when x == y)
  double error_budget = 0;           // combined holonomy error bounds
  bool within_budget = false;
};

// Residuals of the composition and intertwining identities for stable
// holonomies at y, z in W^s(x), plus the measured Hoelder ratio.
IdentityReport verify_identities(const CocycleSpec& spec, const SymbolSequence& x,
                                 const SymbolSequence& y, const SymbolSequence& z,
                                 double tol = 1e-10);

}  // namespace cocyclelab
