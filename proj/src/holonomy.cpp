#include "cocyclelab/holonomy.hpp"

#include <cmath>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

namespace {

// Finite-precision floor for reported error bounds: even algebraically exact
// finite products carry rounding of this order.
double eps_floor(const Mat2& h) {
  return 64 * std::numeric_limits<double>::epsilon() * (1 + operator_norm(h));
}

std::optional<long long> push_depth(const SymbolSequence& x, const SymbolSequence& y,
                                    bool stable) {
  if (stable) {
    const long long horizon = std::max(x.core_end(), y.core_end()) + 1;
    if (!agree_right_of(x, y, horizon)) return std::nullopt;
    long long m = 0;
    for (long long n = horizon - 1; n >= 0; --n)
      if (x.at(n) != y.at(n)) {
        m = n + 1;
        break;
      }
    return m;
  }
  const long long horizon = std::min(x.core_start(), y.core_start()) - 1;
  if (!agree_left_of(x, y, horizon)) return std::nullopt;
  long long m = 0;
  for (long long n = 0; n > horizon; --n)
    if (x.at(n) != y.at(n)) {
      m = -n + 1;
      break;
    }
  return m;
}

// H = A^n(x)^{-1} A^n(y) (or the backward-product analog), recombined with
// the two renormalization scales folded together.
Mat2 quotient(const CocycleSpec& spec, const SymbolSequence& x, const SymbolSequence& y,
              long long n) {
  const ProductResult px = product(spec, x, n);
  const ProductResult py = product(spec, y, n);
  const double scale = py.log_scale - px.log_scale;
  if (std::fabs(scale) > 690) fail(ErrorCode::Internal, "holonomy scale out of range");
  return (px.matrix.inverse() * py.matrix).scaled(std::exp(scale));
}

HolonomyResult iterate_limit(const CocycleSpec& spec, const SymbolSequence& x,
                             const SymbolSequence& y, bool stable, double tol,
                             double bunch_margin) {
  // Incremental A^n(x)^{-1} and A^n(y) with per-step renormalization.
  Mat2 left = Mat2::identity(), right = Mat2::identity();
  double ls_left = 0, ls_right = 0;
  Mat2 h = Mat2::identity();
  double last_increment = 0, tail_ratio = 0;
  const double threshold = tol * (1 - std::min(bunch_margin, 0.999));
  long long n = 0;
  int settled = 0;
  for (; n < 100000; ++n) {
    const long long pos = stable ? n : -(n + 1);
    const Mat2 step = evaluate_at(spec, x, pos);
    const Mat2 step_y = evaluate_at(spec, y, pos);
    if (stable) {
      left = left * step.inverse();
      right = step_y * right;
    } else {
      left = left * step;  // A^{-n}(x)^{-1} = A(T^{-1}x) ... A(T^{-n}x)
      right = step_y.inverse() * right;
    }
    double s = operator_norm(left);
    left = left.scaled(1 / s);
    ls_left += std::log(s);
    s = operator_norm(right);
    right = right.scaled(1 / s);
    ls_right += std::log(s);

    const double scale = ls_left + ls_right;
    if (std::fabs(scale) > 690) fail(ErrorCode::Internal, "holonomy scale out of range");
    const Mat2 h_next = (left * right).scaled(std::exp(scale));
    const double inc = operator_norm(h_next - h);
    if (last_increment > 0 && inc > 0) tail_ratio = std::max(tail_ratio, inc / last_increment);
    h = h_next;
    if (inc < threshold) {
      if (++settled >= 2) {
        last_increment = std::max(last_increment, inc);
        break;
      }
    } else {
      settled = 0;
    }
    last_increment = inc;
  }
  HolonomyResult out;
  out.matrix = h;
  out.n_used = n + 1;
  out.side = stable ? HolonomySide::Stable : HolonomySide::Unstable;
  const double b = std::min(std::max(tail_ratio, bunch_margin), 0.99);
  out.error_bound = last_increment * b / (1 - b) + eps_floor(h);
  return out;
}

HolonomyResult holonomy_impl(const CocycleSpec& spec, const SymbolSequence& x,
                             const SymbolSequence& y, bool stable,
                             const HolonomyOptions& opts) {
  const BunchingReport bunch = bunching_check(spec);
  if (!bunch.bunched)
    fail(ErrorCode::NotBunched,
         "holonomies need fiber bunching; margin = " + format_g17(bunch.margin));
  const auto depth = push_depth(x, y, stable);
  if (!depth)
    fail(stable ? ErrorCode::NotOnStableSet : ErrorCode::NotOnUnstableSet,
         "endpoints are not on the same " + std::string(stable ? "stable" : "unstable") +
             " set");
  const long long m = *depth;

  if (x == y) {
    HolonomyResult out;
    out.matrix = Mat2::identity();
    out.side = stable ? HolonomySide::Stable : HolonomySide::Unstable;
    out.error_bound = 0;
    return out;
  }

  if (opts.force_iterative) {
    // The truncated-limit route handles global pairs directly: factors
    // cancel once the orbit segment leaves the disagreement region.
    return iterate_limit(spec, x, y, stable, opts.tol, bunch.margin);
  }

  if (!spec.is_locally_constant())
    return iterate_limit(spec, x, y, stable, opts.tol, bunch.margin);

  // Telescoped exact value.  For y in W^s_loc(x) and window [w_lo, w_hi],
  // the factors of A^n(x)^{-1} A^n(y) agree from step |w_lo| on; global
  // pairs are pushed m steps into local position and conjugated back
  // through the intertwining identity.
  const long long m0 = stable ? -static_cast<long long>(spec.table().window_lo)
                              : static_cast<long long>(spec.table().window_hi);
  HolonomyResult out;
  out.side = stable ? HolonomySide::Stable : HolonomySide::Unstable;
  if (m == 0) {
    out.matrix = quotient(spec, x, y, stable ? m0 : -m0);
    out.n_used = m0;
    out.error_bound = eps_floor(out.matrix);
    return out;
  }
  const long long push = stable ? m : -m;
  const SymbolSequence px = shift(x, push), py = shift(y, push);
  const Mat2 local = quotient(spec, px, py, stable ? m0 : -m0);
  const ProductResult ax = product(spec, x, push), ay = product(spec, y, push);
  const double scale = ay.log_scale - ax.log_scale;
  if (std::fabs(scale) > 690) fail(ErrorCode::Internal, "holonomy scale out of range");
  out.matrix = (ax.matrix.inverse() * local * ay.matrix).scaled(std::exp(scale));
  out.n_used = m + m0;
  out.error_bound = eps_floor(out.matrix);
  return out;
}

}  // namespace

std::optional<long long> stable_push(const SymbolSequence& x, const SymbolSequence& y) {
  return push_depth(x, y, true);
}

std::optional<long long> unstable_push(const SymbolSequence& x, const SymbolSequence& y) {
  return push_depth(x, y, false);
}

HolonomyResult stable_holonomy(const CocycleSpec& spec, const SymbolSequence& x,
                               const SymbolSequence& y, const HolonomyOptions& opts) {
  return holonomy_impl(spec, x, y, true, opts);
}

HolonomyResult unstable_holonomy(const CocycleSpec& spec, const SymbolSequence& x,
                                 const SymbolSequence& y, const HolonomyOptions& opts) {
  return holonomy_impl(spec, x, y, false, opts);
}

IdentityReport verify_identities(const CocycleSpec& spec, const SymbolSequence& x,
                                 const SymbolSequence& y, const SymbolSequence& z,
                                 double tol) {
  HolonomyOptions opts;
  opts.tol = tol;
  const HolonomyResult hxy = stable_holonomy(spec, x, y, opts);
  const HolonomyResult hxz = stable_holonomy(spec, x, z, opts);
  const HolonomyResult hzy = stable_holonomy(spec, z, y, opts);

  IdentityReport rep;
  rep.composition_residual = operator_norm(hxy.matrix - hxz.matrix * hzy.matrix);

  const HolonomyResult next = stable_holonomy(spec, shift(x, 1), shift(y, 1), opts);
  rep.intertwining_residual =
      operator_norm(evaluate(spec, x) * hxy.matrix - next.matrix * evaluate(spec, y));

  const double d = distance(x, y);
  rep.holder_ratio =
      d > 0 ? operator_norm(hxy.matrix - Mat2::identity()) / std::pow(d, spec.alpha()) : 0;

  rep.error_budget = hxy.error_bound + hxz.error_bound + hzy.error_bound + next.error_bound;
  rep.within_budget = rep.composition_residual <= tol + 2 * rep.error_budget &&
                      rep.intertwining_residual <= tol + 2 * rep.error_budget;
  return rep;
}

}  // namespace cocyclelab
