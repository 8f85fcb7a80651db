#include "cocyclelab/gallery.hpp"

#include <cmath>
#include <random>

#include "builtin_hook.hpp"
#include "cocyclelab/util.hpp"

namespace cocyclelab {

namespace {

double beta_of(long long k, const CounterexampleParams& p) {
  return p.beta_scale * std::pow(2.0, -static_cast<double>(k) / 2 + 0.25);
}

const Mat2 kDiag = Mat2::diagonal(2.0, 0.5);

}  // namespace

K0Scan determine_k0_scan(int k_max) {
  K0Scan scan;
  scan.k_max = k_max;
  scan.names = {"2^{-k/8} < 0.3",
                "sin(beta) > 2^{-1/8} beta",
                "beta cot(beta) <= 2^{1/8}",
                "gamma <= 2^{1/16} tan(gamma)",
                "pi/2 > 2^{-k/8} + 2^{-k/2+1/4}",
                "2^{3k/8} - 2^{1/4} >= 1"};
  auto holds = [](int ineq, int k) -> bool {
    const double kk = k;
    const double beta = std::pow(2.0, -kk / 2 + 0.25);
    switch (ineq) {
      case 0:
        return std::pow(2.0, -kk / 8) < 0.3;
      case 1:
        return std::sin(beta) > std::pow(2.0, -0.125) * beta;
      case 2:
        return beta < kPi && beta / std::tan(beta) <= std::pow(2.0, 0.125);
      case 3: {
        // gamma evaluated at its worst case tan(gamma) = 2^{-3k/2 - 1/8}
        const double tg = std::pow(2.0, -1.5 * kk - 0.125);
        const double g = std::atan(tg);
        return g <= std::pow(2.0, 1.0 / 16) * tg;
      }
      case 4:
        return kPi / 2 > std::pow(2.0, -kk / 8) + beta;
      case 5:
        return std::pow(2.0, 3 * kk / 8) - std::pow(2.0, 0.25) >= 1.0;
    }
    return false;
  };
  scan.monotone = true;
  int worst_first = 1;
  for (int ineq = 0; ineq < 6; ++ineq) {
    int first = -1;
    for (int k = 1; k <= k_max; ++k) {
      if (holds(ineq, k)) {
        if (first < 0) first = k;
      } else if (first >= 0) {
        scan.monotone = false;  // would indicate a non-monotone inequality
      }
    }
    scan.first_k_holding[static_cast<std::size_t>(ineq)] = first;
    worst_first = std::max(worst_first, first);
  }
  scan.k0 = worst_first - 1;  // all six hold for every k > k0
  return scan;
}

int determine_k0() { return determine_k0_scan().k0; }

const CounterexampleParams& CounterexampleParams::standard() {
  static const CounterexampleParams p = [] {
    CounterexampleParams out;
    out.k0 = determine_k0();
    return out;
  }();
  return p;
}

std::optional<long long> k_of_at(const SymbolSequence& x, long long pos) {
  const long long reach =
      std::max(std::llabs(x.core_start() - pos), std::llabs(x.core_end() - pos)) +
      static_cast<long long>(x.left_period().size()) +
      static_cast<long long>(x.right_period().size()) + 2;
  for (long long d = 1; d <= reach; ++d) {
    if (x.at(pos + d) == 1 || x.at(pos - d) == 1) return d;
  }
  // The scan covered a full tail period beyond the core on both sides.
  return std::nullopt;
}

std::optional<long long> k_of(const SymbolSequence& x) { return k_of_at(x, 0); }

namespace {

double theta_at(const SymbolSequence& x, long long pos, const CounterexampleParams& p) {
  if (x.at(pos) != 1) return 0.0;
  const auto k = k_of_at(x, pos);
  if (!k) return kPi / 2;  // the homoclinic point itself
  if (*k <= p.k0) return 0.0;
  return kPi / 2 - std::pow(2.0, -static_cast<double>(*k) / 8);
}

// R_{theta(x)} in exact form: the quarter turn at the homoclinic point has
// zero diagonal entries (a 1e-17 residue in cos(pi/2) would be amplified by
// 4^n along the homoclinic orbit), and theta = pi/2 - delta is evaluated
// through sin/cos of delta = 2^{-k/8} at full precision.
Mat2 rotation_at(const SymbolSequence& x, long long pos, const CounterexampleParams& p) {
  if (x.at(pos) != 1) return Mat2::identity();
  const auto k = k_of_at(x, pos);
  if (!k) return Mat2(0, -1, 1, 0);
  if (*k <= p.k0) return Mat2::identity();
  const double delta = std::exp2(-static_cast<double>(*k) / 8);
  const double c = std::sin(delta), s = std::cos(delta);  // cos/sin of pi/2 - delta
  return Mat2(c, -s, s, c);
}

CounterexampleParams params_of(const BuiltinRef& ref) {
  CounterexampleParams p = CounterexampleParams::standard();
  if (ref.k0 != 0) p.k0 = ref.k0;
  return p;
}

}  // namespace

double theta(const SymbolSequence& x, const CounterexampleParams& p) {
  return theta_at(x, 0, p);
}

SymbolSequence homoclinic_point() { return SymbolSequence({0}, {1}, 0, {0}); }

SymbolSequence zero_fixed_point() { return SymbolSequence::constant(0); }

CocycleSpec make_builtin_spec(std::optional<int> k0_override) {
  return CocycleSpec::builtin(TransitionMatrix::full_shift(2), kBuiltinDiagRotationName,
                              k0_override);
}

namespace detail {

Mat2 builtin_evaluate_at(const BuiltinRef& ref, const SymbolSequence& x, long long pos) {
  return kDiag * rotation_at(x, pos, params_of(ref));
}

int builtin_effective_k0(const BuiltinRef& ref) { return params_of(ref).k0; }

}  // namespace detail

ReturnStep first_return(const CocycleSpec& spec, const SymbolSequence& x) {
  if (x.at(0) != 1) fail(ErrorCode::Internal, "first_return needs a point of V");
  bool tail_has_one = false;
  for (Symbol s : x.right_period()) tail_has_one |= (s == 1);
  long long n = -1;
  // Covers the future core positions plus a full period of the right tail.
  const long long scan_top = std::max<long long>(x.core_end() + 1, 1) +
                             2 * static_cast<long long>(x.right_period().size());
  for (long long j = 1; j <= scan_top; ++j) {
    if (x.at(j) == 1) {
      n = j;
      break;
    }
  }
  if (n < 0) {
    if (!tail_has_one)
      fail(ErrorCode::NoReturn, "the future of this point is eventually all-zero");
    fail(ErrorCode::Internal, "tail has a 1 but no return found in scan window");
  }
  ReturnStep step;
  step.point = x;
  step.return_time = n;
  step.k_here = k_of(x);
  step.next_point = shift(x, n);
  step.k_next = k_of(step.next_point);
  step.induced = product(spec, x, n);
  return step;
}

ProjectiveArc horizontal_cone() { return ProjectiveArc(0.0, kPi / 4); }

ProjectiveArc cone_of(const SymbolSequence& x, const CounterexampleParams& p) {
  if (x.at(0) != 1) fail(ErrorCode::ConeUndefined, "cone is defined on V only");
  const auto k = k_of(x);
  if (!k) fail(ErrorCode::ConeUndefined, "cone undefined at the homoclinic point");
  if (*k <= p.k0)
    fail(ErrorCode::ConeUndefined,
         "k(x) = " + std::to_string(*k) + " is at or below the cutoff k0 = " +
             std::to_string(p.k0));
  const double delta = std::pow(2.0, -static_cast<double>(*k) / 8);  // pi/2 - theta
  const double beta = beta_of(*k, p);
  if (!(delta - beta > 0) || !(delta + beta < kPi / 2))
    fail(ErrorCode::ConeUndefined, "excluded band leaves the open quadrant");
  // Complement of the band [delta - beta, delta + beta] of direction angles.
  return ProjectiveArc(delta + kPi / 2, kPi / 2 - beta);
}

ProjectiveArc cone_or_bridge(const SymbolSequence& x, const CounterexampleParams& p) {
  const auto k = k_of(x);
  if (k && *k > p.k0) return cone_of(x, p);
  return horizontal_cone();
}

ConeStepReport check_cone_step(const CocycleSpec& spec, const SymbolSequence& x,
                               const CounterexampleParams& p) {
  ConeStepReport rep;
  const ReturnStep step = first_return(spec, x);
  rep.return_time = step.return_time;
  rep.k_here = step.k_here;
  rep.k_next = step.k_next;

  const ProjectiveArc source = cone_or_bridge(x, p);
  const ProjectiveArc target = cone_or_bridge(step.next_point, p);
  // Arc operations take the recombined product: the renormalized matrix has
  // determinant e^{-2 ls}, which reads as degenerate once N_V is large.
  const Mat2 induced = step.induced.recombined();
  const ProjectiveArc image = arc_image(induced, source);
  rep.inclusion_slack = arc_containment_slack(target, image);
  rep.log_growth = std::log(min_growth_on_arc(induced, source));
  rep.log_growth_required = 0.5 * static_cast<double>(step.return_time) * std::log(2.0);

  const double n = static_cast<double>(step.return_time);
  const double gamma = std::min(kPi / 2, proj_dist(image.center, 0.0) + image.half_width);
  rep.tan_gamma = std::tan(std::min(gamma, kPi / 2 - 1e-12));
  rep.tan_gamma_bound = std::pow(2.0, -1.5 * n - 0.125);
  if (rep.k_next && *rep.k_next > p.k0) {
    const double kn = static_cast<double>(*rep.k_next);
    rep.chain_value =
        std::pow(2.0, -kn / 2) * (std::pow(2.0, 3 * kn / 8) - std::pow(2.0, 0.25));
  }

  rep.pass = true;
  const double slack = 1e-12;
  // measured arcs carry a ~1e-15 angular representation floor
  const double arc_floor = 4e-15;
  if (!(rep.inclusion_slack > 0)) {
    rep.pass = false;
    rep.failing = "cone inclusion A_V(x) C(x) in C(T_V x)";
  } else if (rep.log_growth < rep.log_growth_required - slack * std::max(1.0, n)) {
    rep.pass = false;
    rep.failing = "growth |A_V(x) v| >= 2^{N_V/2}";
  } else if (rep.k_here && *rep.k_here > p.k0 &&
             rep.tan_gamma > rep.tan_gamma_bound + arc_floor) {
    rep.pass = false;
    rep.failing = "tan gamma <= 2^{-3N_V/2 - 1/8}";
  } else if (rep.k_next && *rep.k_next > p.k0 && rep.k_here && *rep.k_here > p.k0 &&
             gamma > rep.chain_value + arc_floor) {
    rep.pass = false;
    rep.failing = "gamma <= 2^{-k'/2} (2^{3k'/8} - 2^{1/4})";
  }
  return rep;
}

ConeStepReport verify_cone_step(const CocycleSpec& spec, const SymbolSequence& x,
                                const CounterexampleParams& p) {
  ConeStepReport rep = check_cone_step(spec, x, p);
  if (!rep.pass)
    fail(ErrorCode::ConeStepViolated,
         rep.failing + " at N_V = " + std::to_string(rep.return_time) +
             ", x = " + x.to_string());
  return rep;
}

NotUhReport verify_not_uh(const CocycleSpec& spec, int n_max) {
  NotUhReport rep;
  rep.n_max = n_max;
  const SymbolSequence q = homoclinic_point();
  std::vector<double> log_norms(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const ProductResult pr = product(spec, shift(q, -n), 2 * n);
    const double norm = std::exp(pr.log_norm());
    rep.norms.push_back(norm);
    log_norms[static_cast<std::size_t>(n)] = pr.log_norm();
    rep.max_norm_deviation = std::max(rep.max_norm_deviation, std::fabs(norm - 1.0));
  }
  rep.probe_taus = {0.05, 0.1, 0.3};
  rep.all_probes_falsified = true;
  for (double tau : rep.probe_taus) {
    bool falsified = false;
    for (int n = 1; n <= n_max && !falsified; ++n)
      falsified = log_norms[static_cast<std::size_t>(n)] <= tau * (2 * n) - std::log(2.0);
    rep.all_probes_falsified &= falsified;
  }
  rep.pass = rep.max_norm_deviation <= 1e-10 && rep.all_probes_falsified;
  return rep;
}

namespace {

// Random V_0 point: 1 at the origin, random gap structure on a core window,
// periodic right tail containing a 1 so returns never run out.
SymbolSequence random_v0_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gap(0, 40);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> len(8, 40);

  const int core_len = len(rng);
  Word core;
  core.push_back(1);
  int pending = gap(rng);
  for (int i = 1; i < core_len; ++i) {
    if (pending == 0) {
      core.push_back(1);
      pending = gap(rng);
    } else {
      core.push_back(0);
      --pending;
    }
  }
  Word right(static_cast<std::size_t>(gap(rng)) + 1, 0);
  right.back() = 1;
  Word left(static_cast<std::size_t>(gap(rng)) + 1, 0);
  if (bit(rng)) left.back() = 1;
  return SymbolSequence(left, core, 0, right);
}

}  // namespace

ExponentBoundReport verify_exponent_bound(const CocycleSpec& spec, int max_period,
                                          int sample_count, std::uint64_t seed) {
  ExponentBoundReport rep;
  const double tau = std::log(2.0) / 2 - 1e-9;
  rep.gap = gap_scan(spec, max_period, tau);
  rep.gap_pass = rep.gap.verdict == GapVerdict::Holds;

  // Deep-zero family (1 0^{2m}) with 2m+1 above the cutoff: rotation active
  // on one point per period.
  const CounterexampleParams& p = CounterexampleParams::standard();
  rep.deep_zero_pass = true;
  for (int m = (p.k0 + 1) / 2; m <= (p.k0 + 1) / 2 + 5; ++m) {
    Word w(static_cast<std::size_t>(2 * m + 1), 0);
    w[0] = 1;
    const double lp = periodic_exponent(spec, PeriodicOrbit(w)).lambda_plus;
    rep.deep_zero_family.emplace_back(m, lp);
    rep.deep_zero_pass &= lp >= tau;
  }

  // Orbitwise cone tracking.
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(sample_count));
  for (int i = 0; i < sample_count; ++i)
    seeds[static_cast<std::size_t>(i)] = seed + 0x9e3779b97f4a7c15ull * (i + 1);
  auto tracks = parallel_map(seeds, [&](std::uint64_t s) {
    std::mt19937_64 rng(s);
    OrbitTrackRecord rec;
    rec.pass = true;
    rec.worst_margin = std::numeric_limits<double>::infinity();
    SymbolSequence z = random_v0_point(rng);
    double log_vec = 0;  // log |A_V^{(j)} ... A_V^{(1)} v| for unit v
    double dir = cone_or_bridge(z, p).center;
    double required = 0;
    while (rec.total_steps < 160 && rec.returns < 24) {
      const ProjectiveArc source = cone_or_bridge(z, p);
      if (!source.contains_direction(dir)) {
        rec.pass = false;
        break;
      }
      const ConeStepReport step = check_cone_step(spec, z, p);
      if (!step.pass) {
        rec.pass = false;
        break;
      }
      const ReturnStep rs = first_return(spec, z);
      double grow, new_dir;
      rs.induced.matrix.apply_direction(dir, grow, new_dir);
      log_vec += rs.induced.log_scale + std::log(grow);
      dir = new_dir;
      required += 0.5 * static_cast<double>(rs.return_time) * std::log(2.0);
      rec.total_steps += rs.return_time;
      rec.returns += 1;
      rec.worst_margin = std::min(rec.worst_margin, log_vec - required);
      if (log_vec < required - 1e-9) {
        rec.pass = false;
        break;
      }
      z = rs.next_point;
    }
    return rec;
  });
  rep.tracked_points = sample_count;
  rep.worst_track_margin = std::numeric_limits<double>::infinity();
  for (const auto& rec : tracks) {
    rep.tracked_pass += rec.pass ? 1 : 0;
    rep.worst_track_margin = std::min(rep.worst_track_margin, rec.worst_margin);
  }
  rep.track_pass = rep.tracked_pass == rep.tracked_points;

  // Off-V orbits: theta vanishes along the forward orbit, so the product is
  // diagonal and the finite-time exponent is exactly log 2.
  const double e1 = finite_time_exponent(spec, zero_fixed_point(), 37);
  SymbolSequence ones_then_zeros({1}, {}, 0, {0});
  const double e2 = finite_time_exponent(spec, ones_then_zeros, 37);
  rep.off_v_pass =
      std::fabs(e1 - std::log(2.0)) <= 1e-12 && std::fabs(e2 - std::log(2.0)) <= 1e-12;

  rep.pass = rep.gap_pass && rep.deep_zero_pass && rep.track_pass && rep.off_v_pass;
  return rep;
}

}  // namespace cocyclelab
