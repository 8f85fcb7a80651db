#include "cocyclelab/transfer.hpp"

#include <cmath>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

SlowPoint find_slow_point(const CocycleSpec& spec, long long n0,
                          const SlowPointSearch& search) {
  if (n0 < 1) fail(ErrorCode::Internal, "find_slow_point needs n0 >= 1");
  std::vector<SymbolSequence> candidates = search.extra_points;
  for (const auto& orbit : enumerate_periodic(spec.base(), search.max_period)) {
    const SymbolSequence base = orbit.base_point();
    for (int j = 0; j < orbit.period(); ++j) candidates.push_back(shift(base, j));
  }
  if (candidates.empty()) fail(ErrorCode::EmptySearchSet, "no candidate points to search");
  auto norms = parallel_map(candidates, [&](const SymbolSequence& x) {
    return product(spec, x, n0).log_norm();
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < norms.size(); ++i)
    if (norms[i] < norms[best]) best = i;
  SlowPoint out;
  out.point = candidates[best];
  out.log_norm = norms[best];
  return out;
}

Shadow build_shadow(const CocycleSpec& spec, const SymbolSequence& x, long long n0) {
  const TransitionMatrix& q = spec.base();
  if (!q.irreducible()) fail(ErrorCode::NotIrreducible, "build_shadow needs irreducibility");
  Shadow sh;
  sh.connecting = connecting_word(q, x.at(n0), x.at(0));
  sh.n1 = static_cast<long long>(sh.connecting.size()) + 1;

  Word w(static_cast<std::size_t>(n0 + sh.n1));
  for (long long i = 0; i <= n0; ++i) w[static_cast<std::size_t>(i)] = x.at(i);
  for (std::size_t i = 0; i < sh.connecting.size(); ++i)
    w[static_cast<std::size_t>(n0 + 1) + i] = sh.connecting[i];

  sh.orbit = PeriodicOrbit(w);
  sh.p = SymbolSequence::periodic(w);  // the phase aligned with x's segment
  sh.y = bracket(sh.p, x);

  // Coordinatewise structural facts used by the holonomy factorization.
  if (!agree_right_of(sh.y, x, 0))
    fail(ErrorCode::Internal, "splice is not on the local stable set of x");
  if (!agree_left_of(shift(sh.y, n0), shift(sh.p, n0), 0))
    fail(ErrorCode::Internal, "shifted splice is not on the local unstable set of the shadow");
  if (!agree_left_of(sh.y, sh.p, 0))
    fail(ErrorCode::Internal, "splice is not on the local unstable set of the shadow");
  return sh;
}

TransferReport transfer_bound(const CocycleSpec& spec, const SymbolSequence& x,
                              const Shadow& shadow, long long n0, double eps, double tol) {
  const BunchingReport bunch = bunching_check(spec);
  if (!bunch.bunched)
    fail(ErrorCode::NotBunched, "transfer needs fiber bunching; margin = " +
                                    format_g17(bunch.margin));
  const long long n1 = shadow.n1;
  const SymbolSequence& p = shadow.p;
  const SymbolSequence& y = shadow.y;

  TransferReport rep;
  rep.n0 = n0;
  rep.n1 = n1;
  rep.eps = eps;
  rep.connecting = shadow.connecting;
  rep.orbit_word = shadow.orbit.word();
  rep.log_norm_x = product(spec, x, n0).log_norm();

  // Holonomies along the truncated-limit route so the reported error
  // bounds are live; exactness for locally constant specs is covered by the
  // oracle tests.
  HolonomyOptions hopts;
  hopts.tol = std::min(tol, 1e-10);
  hopts.force_iterative = true;
  const SymbolSequence px = shift(x, n0), pyy = shift(y, n0), pp = shift(p, n0);

  const HolonomyResult hu_top = unstable_holonomy(spec, pp, pyy, hopts);
  const HolonomyResult hs_top = stable_holonomy(spec, pyy, px, hopts);
  const HolonomyResult hs_bot = stable_holonomy(spec, x, y, hopts);
  const HolonomyResult hu_bot = unstable_holonomy(spec, y, p, hopts);
  rep.holonomy_error_budget =
      hu_top.error_bound + hs_top.error_bound + hs_bot.error_bound + hu_bot.error_bound;

  const ProductResult a_n1 = product(spec, pp, n1);
  const ProductResult a_n0_x = product(spec, x, n0);

  rep.factor_norms = {std::exp(a_n1.log_norm()), operator_norm(hu_top.matrix),
                      operator_norm(hs_top.matrix), operator_norm(hs_bot.matrix),
                      operator_norm(hu_bot.matrix)};
  double log_c = a_n1.log_norm();
  for (int i = 1; i < 5; ++i)
    log_c = std::max(log_c, std::log(rep.factor_norms[static_cast<std::size_t>(i)]));
  rep.log_c = log_c;

  // Reconstruction: A^{n0+n1}(p) =
  //   A^{n1}(T^{n0}p) H^u_{T^{n0}p <- T^{n0}y} H^s_{T^{n0}y <- T^{n0}x}
  //   A^{n0}(x) H^s_{x <- y} H^u_{y <- p}.
  const ProductResult lhs = product(spec, p, n0 + n1);
  const Mat2 mid = hu_top.matrix * hs_top.matrix * a_n0_x.matrix * hs_bot.matrix *
                   hu_bot.matrix;
  const Mat2 rhs_hat = a_n1.matrix * mid;
  const double rhs_scale = a_n1.log_scale + a_n0_x.log_scale;
  // Compare at matched scales: residual relative to |A^{n0+n1}(p)|.
  const double rel_scale = std::exp(rhs_scale - lhs.log_scale);
  if (!std::isfinite(rel_scale)) fail(ErrorCode::Internal, "transfer scale out of range");
  rep.identity_residual =
      operator_norm(lhs.matrix - rhs_hat.scaled(rel_scale)) / operator_norm(lhs.matrix);

  const double budget = 10 * rep.holonomy_error_budget + 1e3 * std::numeric_limits<double>::epsilon();
  if (rep.identity_residual > budget)
    fail(ErrorCode::IdentityResidualExceeded,
         "reconstruction residual " + format_g17(rep.identity_residual) +
             " exceeds holonomy budget " + format_g17(budget));

  rep.log_bound_product = 5 * rep.log_c + rep.log_norm_x;
  rep.lambda_plus_p = periodic_exponent(spec, shadow.orbit).lambda_plus;
  rep.exponent_bound = rep.log_bound_product / static_cast<double>(n0 + n1);
  rep.eps_bound = (5 * rep.log_c + static_cast<double>(n0) * eps) /
                  static_cast<double>(n0 + n1);

  const bool norm_chain =
      lhs.log_norm() <= rep.log_bound_product + std::log1p(tol) + 1e-12;
  rep.bound_holds = norm_chain && rep.lambda_plus_p <= rep.exponent_bound + tol;
  return rep;
}

TransferReport run_transfer(const CocycleSpec& spec, long long n0, double eps,
                            const SlowPointSearch& search, double tol) {
  const SlowPoint slow = find_slow_point(spec, n0, search);
  const Shadow shadow = build_shadow(spec, slow.point, n0);
  return transfer_bound(spec, slow.point, shadow, n0, eps, tol);
}

}  // namespace cocyclelab
