#include "cocyclelab/certify.hpp"

#include <algorithm>
#include <cmath>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

UHVerdict norm_growth_probe(const CocycleSpec& spec, const ProbeOptions& opts) {
  if (opts.tau_probe <= 0) fail(ErrorCode::Internal, "tau_probe must be positive");
  std::vector<SymbolSequence> samples = opts.extra_points;
  for (const auto& orbit : enumerate_periodic(spec.base(), opts.max_period))
    samples.push_back(orbit.base_point());

  UHVerdict verdict;
  verdict.search_horizon = opts.n_max;
  verdict.tau_probe = opts.tau_probe;
  for (const auto& x : samples) {
    Mat2 acc = Mat2::identity();
    double log_scale = 0;
    for (long long n = 1; n <= opts.n_max; ++n) {
      acc = evaluate_at(spec, x, n - 1) * acc;
      const double s = operator_norm(acc);
      acc = acc.scaled(1 / s);
      log_scale += std::log(s);
      if (log_scale <= opts.tau_probe * n - std::log(2.0)) {
        GrowthWitness w;
        w.point = x;
        w.steps = n;
        w.log_norm = log_scale;
        verdict.status = UHStatus::Falsified;
        verdict.witness = w;
        return verdict;
      }
    }
  }
  verdict.status = UHStatus::Inconclusive;
  return verdict;
}

CocycleSpec recode_one_step(const CocycleSpec& spec, std::vector<Word>* context_words) {
  if (!spec.is_locally_constant())
    fail(ErrorCode::NotOneStep, "only locally constant cocycles can be recoded");
  const auto& t = spec.table();
  const int width = t.window_hi - t.window_lo + 1;
  const auto words = admissible_words(spec.base(), width);
  if (context_words) *context_words = words;
  if (width == 1) return spec;

  const int n = static_cast<int>(words.size());
  std::vector<std::vector<int>> q(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // words overlap progressively: w_i[1..] == w_j[..W-2]
      bool ok = true;
      for (int k = 1; k < width && ok; ++k)
        ok = words[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
             words[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)];
      q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ok ? 1 : 0;
    }
  std::vector<Mat2> per_symbol;
  per_symbol.reserve(words.size());
  for (const auto& w : words) per_symbol.push_back(t.entries.at(w));
  return CocycleSpec::one_step(validate_sft(q), std::move(per_symbol), spec.alpha());
}

namespace {

struct ConeFamilyCheck {
  bool ok = false;
  double worst_slack = 0;
};

// Strict forward invariance of the family under every admissible edge.
ConeFamilyCheck check_family(const std::vector<Mat2>& mats, const TransitionMatrix& q,
                             const std::vector<ProjectiveArc>& cones, double margin,
                             bool backward) {
  ConeFamilyCheck res;
  res.ok = true;
  res.worst_slack = kPi;
  for (Symbol a = 0; a < q.size(); ++a) {
    for (Symbol b = 0; b < q.size(); ++b) {
      if (!q.edge(a, b)) continue;
      const std::size_t src = static_cast<std::size_t>(backward ? b : a);
      const std::size_t dst = static_cast<std::size_t>(backward ? a : b);
      if (cones[src].is_full() || cones[dst].is_full()) {
        res.ok = false;
        return res;
      }
      const Mat2 m = backward ? mats[static_cast<std::size_t>(a)].inverse()
                              : mats[static_cast<std::size_t>(a)];
      const ProjectiveArc img = arc_image(m, cones[src], true);
      const double slack = arc_containment_slack(cones[dst], img);
      res.worst_slack = std::min(res.worst_slack, slack);
      if (slack < margin) res.ok = false;
    }
  }
  return res;
}

std::vector<ProjectiveArc> hull_step(const std::vector<Mat2>& mats, const TransitionMatrix& q,
                                     const std::vector<ProjectiveArc>& cones, bool backward) {
  std::vector<ProjectiveArc> next;
  next.reserve(cones.size());
  for (Symbol t = 0; t < q.size(); ++t) {
    std::vector<ProjectiveArc> images;
    for (Symbol s = 0; s < q.size(); ++s) {
      const bool has_edge = backward ? q.edge(t, s) : q.edge(s, t);
      if (!has_edge) continue;
      const std::size_t src = static_cast<std::size_t>(s);
      const Mat2 m = backward ? mats[static_cast<std::size_t>(t)].inverse()
                              : mats[src];
      images.push_back(arc_image(m, cones[src], true));
    }
    next.push_back(images.empty() ? cones[static_cast<std::size_t>(t)] : arc_hull(images));
  }
  return next;
}

struct GrowthData {
  bool ok = false;
  double gamma = 0;  // per-step growth over the certified block length
  double g_min = 1;  // worst single-step growth on the cones
  int length = 0;
};

// Exhaustive cumulative growth over admissible words up to max_len: find the
// shortest block length where every word expands cone vectors uniformly.
// Forward: word (a_1..a_L), product M_{a_L}...M_{a_1}, tested on the cone at
// a_1.  Backward: path a_1 -> ... -> a_{L+1}, product M_{a_1}^{-1}...M_{a_L}^{-1},
// tested on the cone at a_{L+1} (pullbacks run against reversed edges).
GrowthData growth_check(const std::vector<Mat2>& mats, const TransitionMatrix& q,
                        const std::vector<ProjectiveArc>& cones, bool backward, int max_len,
                        double threshold) {
  GrowthData res;
  for (Symbol a = 0; a < q.size(); ++a) {
    for (Symbol b = 0; b < q.size(); ++b) {
      if (!q.edge(a, b)) continue;
      const double g =
          backward ? min_growth_on_arc(mats[static_cast<std::size_t>(a)].inverse(),
                                       cones[static_cast<std::size_t>(b)])
                   : min_growth_on_arc(mats[static_cast<std::size_t>(a)],
                                       cones[static_cast<std::size_t>(a)]);
      res.g_min = std::min(res.g_min, g);
    }
  }
  for (int len = 1; len <= max_len; ++len) {
    double total_words = 1;
    for (int i = 0; i <= len; ++i) total_words *= q.size();
    if (total_words > 2e6) break;
    double worst = std::numeric_limits<double>::infinity();
    Symbol start = 0;
    auto rec = [&](auto&& self, Symbol sym, const Mat2& prod, int depth) -> void {
      if (depth == len) {
        worst = std::min(worst,
                         min_growth_on_arc(prod, cones[static_cast<std::size_t>(start)]));
        return;
      }
      for (Symbol nxt = 0; nxt < q.size(); ++nxt) {
        const bool has_edge = backward ? q.edge(nxt, sym) : q.edge(sym, nxt);
        if (!has_edge) continue;
        const Mat2 step = backward ? mats[static_cast<std::size_t>(nxt)].inverse()
                                   : mats[static_cast<std::size_t>(nxt)];
        self(self, nxt, step * prod, depth + 1);
      }
    };
    for (start = 0; start < q.size(); ++start) {
      if (backward) {
        rec(rec, start, Mat2::identity(), 0);
      } else {
        rec(rec, start, mats[static_cast<std::size_t>(start)], 1);
      }
    }
    if (worst > 0 && std::pow(worst, 1.0 / len) >= 1.0 + threshold) {
      res.ok = true;
      res.gamma = std::pow(worst, 1.0 / len);
      res.length = len;
      return res;
    }
  }
  return res;
}

// Heuristic seed directions: propagate expanding directions along edges.
std::vector<double> seed_directions(const std::vector<Mat2>& mats, const TransitionMatrix& q,
                                    bool backward) {
  std::vector<double> dir(static_cast<std::size_t>(q.size()));
  for (Symbol a = 0; a < q.size(); ++a) {
    const Mat2 m = backward ? mats[static_cast<std::size_t>(a)].inverse()
                            : mats[static_cast<std::size_t>(a)];
    double len, ang;
    m.apply_direction(svd2(m).expand_dir, len, ang);
    dir[static_cast<std::size_t>(a)] = ang;
  }
  for (int round = 0; round < 40; ++round) {
    std::vector<double> next = dir;
    for (Symbol t = 0; t < q.size(); ++t) {
      double best_len = -1, best_ang = dir[static_cast<std::size_t>(t)];
      for (Symbol s = 0; s < q.size(); ++s) {
        const bool has_edge = backward ? q.edge(t, s) : q.edge(s, t);
        if (!has_edge) continue;
        const Mat2 m = backward ? mats[static_cast<std::size_t>(t)].inverse()
                                : mats[static_cast<std::size_t>(s)];
        double len, ang;
        m.apply_direction(dir[static_cast<std::size_t>(s)], len, ang);
        if (len > best_len) {
          best_len = len;
          best_ang = ang;
        }
      }
      next[static_cast<std::size_t>(t)] = best_ang;
    }
    dir = std::move(next);
  }
  return dir;
}

}  // namespace

UHVerdict cone_certify(const CocycleSpec& spec, const CertifyOptions& opts) {
  if (spec.is_builtin())
    fail(ErrorCode::NotOneStep,
         "cone certification needs a locally constant cocycle; only the probe applies");
  std::vector<Word> contexts;
  const CocycleSpec one = spec.is_one_step() ? spec : recode_one_step(spec, &contexts);
  const TransitionMatrix& q = one.base();
  if (!q.irreducible())
    fail(ErrorCode::NotIrreducible, "cone certification requires an irreducible base");
  std::vector<Mat2> mats;
  mats.reserve(static_cast<std::size_t>(q.size()));
  for (Symbol s = 0; s < q.size(); ++s) mats.push_back(one.table().entries.at({s}));

  UHVerdict verdict;
  verdict.search_horizon = opts.refine_steps;

  const double widths[] = {kPi / 3, kPi / 4, kPi / 6, kPi / 12, kPi / 24};
  for (int pass = 0; pass < 2; ++pass) {
    const bool backward = pass == 1;
    bool pass_ok = false;
    std::vector<ProjectiveArc> cones_done;
    GrowthData growth_done;
    const auto seeds = seed_directions(mats, q, backward);
    for (double w : widths) {
      std::vector<ProjectiveArc> cones;
      for (Symbol s = 0; s < q.size(); ++s)
        cones.emplace_back(seeds[static_cast<std::size_t>(s)], w);
      for (int round = 0; round < opts.refine_steps; ++round) {
        cones = hull_step(mats, q, cones, backward);
        const auto chk = check_family(mats, q, cones, opts.margin, backward);
        if (!chk.ok) continue;
        const auto gd = growth_check(mats, q, cones, backward, opts.max_word_length,
                                     opts.growth_threshold);
        if (!gd.ok) break;  // invariant family without growth: try next seed
        pass_ok = true;
        cones_done = cones;
        growth_done = gd;
        break;
      }
      if (pass_ok) break;
    }
    if (!pass_ok) {
      verdict.status = UHStatus::Inconclusive;
      return verdict;
    }
    if (!verdict.certificate) verdict.certificate.emplace();
    auto& cert = *verdict.certificate;
    if (!backward) {
      cert.forward = cones_done;
    } else {
      cert.backward = cones_done;
    }
    // Norm growth constants: over the certified block length L with rate
    // gamma and single-step floor g_min, |A^n v| >= c e^{tau n} with
    // tau = log gamma and c = min(1, (g_min/gamma)^{L-1}).
    const double tau = std::log(growth_done.gamma);
    const double c =
        std::min(1.0, std::pow(std::min(1.0, growth_done.g_min) / growth_done.gamma,
                               growth_done.length - 1));
    if (!backward) {
      cert.tau = tau;
      cert.c = c;
      cert.gamma = growth_done.gamma;
    } else {
      cert.tau = std::min(cert.tau, tau);
      cert.c = std::min(cert.c, c);
      cert.gamma = std::min(cert.gamma, growth_done.gamma);
    }
    cert.word_length = std::max(cert.word_length, growth_done.length);
    cert.margin = opts.margin;
    cert.recoded = !spec.is_one_step();
    cert.context_words = contexts;
  }
  verdict.status = UHStatus::Certified;
  return verdict;
}

bool revalidate(const CocycleSpec& spec, const ConeCertificate& cert) {
  const CocycleSpec one = spec.is_one_step() ? spec : recode_one_step(spec);
  const TransitionMatrix& q = one.base();
  std::vector<Mat2> mats;
  for (Symbol s = 0; s < q.size(); ++s) mats.push_back(one.table().entries.at({s}));
  if (cert.forward.size() != static_cast<std::size_t>(q.size()) ||
      cert.backward.size() != static_cast<std::size_t>(q.size()))
    return false;
  if (!check_family(mats, q, cert.forward, cert.margin, false).ok) return false;
  if (!check_family(mats, q, cert.backward, cert.margin, true).ok) return false;
  const double thr = cert.gamma - 1;
  const auto fwd = growth_check(mats, q, cert.forward, false, cert.word_length,
                                std::min(1e-6, thr / 2));
  const auto bwd = growth_check(mats, q, cert.backward, true, cert.word_length,
                                std::min(1e-6, thr / 2));
  return fwd.ok && bwd.ok;
}

DirectionPair extract_directions(const CocycleSpec& spec, const SymbolSequence& x,
                                 long long n) {
  if (n < 1) fail(ErrorCode::Internal, "extract_directions needs n >= 1");
  const ProductResult fwd = product(spec, x, n);
  const ProductResult bwd = product(spec, x, -n);
  const Svd2 sf = svd2(fwd.matrix);
  const Svd2 sb = svd2(bwd.matrix);
  DirectionPair out;
  out.forward_gap = sf.sigma1 / sf.sigma2;
  out.backward_gap = sb.sigma1 / sb.sigma2;
  if (out.forward_gap < 1 + 1e-6 || out.backward_gap < 1 + 1e-6)
    fail(ErrorCode::DegenerateSingularGap,
         "singular gap too small for meaningful directions");
  out.stable_dir = sf.contract_dir;
  out.unstable_dir = sb.contract_dir;
  return out;
}

}  // namespace cocyclelab
