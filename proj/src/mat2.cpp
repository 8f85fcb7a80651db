#include "cocyclelab/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace cocyclelab {

Mat2 Mat2::rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Mat2(c, -s, s, c);
}

Mat2 Mat2::inverse() const {
  if (std::fabs(det) < 1e-14)
    fail(ErrorCode::DegenerateMatrix, "matrix determinant below 1e-14");
  const double inv = 1.0 / det;
  return Mat2(m11 * inv, -m01 * inv, -m10 * inv, m00 * inv);
}

double Mat2::max_abs() const {
  return std::max(std::max(std::fabs(m00), std::fabs(m01)),
                  std::max(std::fabs(m10), std::fabs(m11)));
}

void Mat2::apply_direction(double angle, double& out_len, double& out_angle) const {
  const double ux = std::cos(angle), uy = std::sin(angle);
  const double vx = m00 * ux + m01 * uy;
  const double vy = m10 * ux + m11 * uy;
  out_len = std::hypot(vx, vy);
  out_angle = wrap_pi(std::atan2(vy, vx));
}

bool is_sl2(const Mat2& m, double tol) { return std::fabs(m.det - 1.0) <= tol; }

Svd2 svd2(const Mat2& m) {
  // Eigen-data of M^T M = [[p, q], [q, s]].
  const double p = m.m00 * m.m00 + m.m10 * m.m10;
  const double q = m.m00 * m.m01 + m.m10 * m.m11;
  const double s = m.m01 * m.m01 + m.m11 * m.m11;
  const double tr = p + s;
  const double disc = std::sqrt(std::max(0.0, (p - s) * (p - s) + 4 * q * q));
  const double lam1 = 0.5 * (tr + disc);
  Svd2 out;
  out.sigma1 = std::sqrt(std::max(0.0, lam1));
  out.sigma2 = out.sigma1 > 0 ? std::fabs(m.det) / out.sigma1 : 0.0;
  // Eigenvector direction for the larger eigenvalue; arbitrary when M^T M is
  // a multiple of the identity (conformal case).
  out.expand_dir = wrap_pi(0.5 * std::atan2(2 * q, p - s));
  out.contract_dir = wrap_pi(out.expand_dir + kPi / 2);
  return out;
}

double operator_norm(const Mat2& m) { return svd2(m).sigma1; }
double co_norm(const Mat2& m) { return svd2(m).sigma2; }

ProjectiveArc::ProjectiveArc(double c, double h) : center(wrap_pi(c)), half_width(h) {
  if (!(h > 0) || h > kPi / 2 + 1e-12)
    fail(ErrorCode::Internal, "projective arc half-width out of (0, pi/2]");
  half_width = std::min(h, kPi / 2);
}

ProjectiveArc arc_image(const Mat2& m, const ProjectiveArc& arc, bool rigorous) {
  if (std::fabs(m.det) < 1e-14)
    fail(ErrorCode::DegenerateMatrix, "arc_image of a degenerate matrix");
  if (arc.is_full()) return ProjectiveArc::full_line();

  // In right-singular coordinates a direction at signed angle a from the
  // expanding direction maps to signed angle B(a) = atan2(r sin a, cos a)
  // from the expanding image direction, r = sigma2/sigma1.  B is strictly
  // monotone with B(a + pi) = B(a) + pi, so it transports endpoint angles
  // exactly even at extreme condition numbers where mapped endpoint
  // directions would collapse to the same double.
  const Svd2 sv = svd2(m);
  const double r = sv.sigma2 / sv.sigma1;
  double u1_len, u1;
  m.apply_direction(sv.expand_dir, u1_len, u1);

  double ac = wrap_pi(arc.center - sv.expand_dir);
  if (ac > kPi / 2) ac -= kPi;  // representative in (-pi/2, pi/2]
  const double a1 = ac - arc.half_width;
  const double a2 = ac + arc.half_width;
  auto transported = [&](double a) {
    // continuous branch of atan2(r sin a, cos a) matching a's period offset
    double base = std::floor((a + kPi / 2) / kPi);
    double a0 = a - base * kPi;  // in [-pi/2, pi/2)
    return std::atan2(r * std::sin(a0), std::cos(a0)) + base * kPi;
  };
  const double b1 = transported(a1);
  const double b2 = transported(a2);
  double half = (b2 - b1) / 2;
  double center = u1 + (b1 + b2) / 2;
  half = std::max(half, 1e-15);  // resolution floor keeps arcs nonempty
  if (rigorous) half += kArcSlack;
  if (half >= kPi / 2) return ProjectiveArc::full_line();
  return ProjectiveArc(center, half);
}

double arc_containment_slack(const ProjectiveArc& outer, const ProjectiveArc& inner) {
  if (outer.is_full()) return kPi / 2 - inner.half_width;
  if (inner.is_full()) return -kPi;
  return outer.half_width - inner.half_width - proj_dist(outer.center, inner.center);
}

bool arc_contains(const ProjectiveArc& outer, const ProjectiveArc& inner, double margin) {
  if (outer.is_full()) return true;
  if (inner.is_full()) return false;
  return arc_containment_slack(outer, inner) >= margin;
}

double min_growth_on_arc(const Mat2& m, const ProjectiveArc& arc) {
  const Svd2 sv = svd2(m);
  if (arc.is_full()) return sv.sigma2;
  // |M u(psi)|^2 = s1^2 cos^2(t) + s2^2 sin^2(t) with t the angular distance
  // from psi to the most-expanded right-singular direction; decreasing in t.
  const double t = std::min(kPi / 2, proj_dist(arc.center, sv.expand_dir) + arc.half_width);
  const double c = std::cos(t), s = std::sin(t);
  return std::sqrt(sv.sigma1 * sv.sigma1 * c * c + sv.sigma2 * sv.sigma2 * s * s);
}

ProjectiveArc arc_hull(const std::vector<ProjectiveArc>& arcs, double gap_floor) {
  if (arcs.empty()) fail(ErrorCode::Internal, "arc_hull of empty set");
  for (const auto& a : arcs)
    if (a.is_full()) return ProjectiveArc::full_line();

  // Work on the circle of circumference pi.  Merge the intervals
  // [start, start+len) and locate the largest uncovered gap.
  struct Iv {
    double start, len;
  };
  std::vector<Iv> ivs;
  ivs.reserve(arcs.size());
  for (const auto& a : arcs) ivs.push_back({wrap_pi(a.center - a.half_width), 2 * a.half_width});
  std::sort(ivs.begin(), ivs.end(), [](const Iv& x, const Iv& y) { return x.start < y.start; });

  // Unroll twice so wrap-around merges happen naturally.
  std::vector<Iv> lin;
  for (const auto& iv : ivs) lin.push_back(iv);
  for (const auto& iv : ivs) lin.push_back({iv.start + kPi, iv.len});

  std::vector<Iv> merged;
  for (const auto& iv : lin) {
    if (!merged.empty() && iv.start <= merged.back().start + merged.back().len + 1e-15) {
      double end = std::max(merged.back().start + merged.back().len, iv.start + iv.len);
      merged.back().len = end - merged.back().start;
    } else {
      merged.push_back(iv);
    }
  }
  // Gaps after merged intervals that start in [0, pi).
  double best_gap = -1, best_gap_start = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double end = merged[i].start + merged[i].len;
    if (merged[i].start >= kPi) break;
    if (merged[i].len >= kPi - 1e-15) return ProjectiveArc::full_line();
    double next_start = (i + 1 < merged.size()) ? merged[i + 1].start : merged[0].start + kPi;
    double gap = next_start - end;
    if (gap > best_gap) {
      best_gap = gap;
      best_gap_start = end;
    }
  }
  if (best_gap <= gap_floor) return ProjectiveArc::full_line();
  const double hull_len = kPi - best_gap;
  return ProjectiveArc(best_gap_start + best_gap + hull_len / 2, hull_len / 2);
}

}  // namespace cocyclelab
