#pragma once

#include <vector>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/util.hpp"

namespace cocyclelab {

// 2x2 real matrix, row-major; the determinant is computed from the entries
// at construction and cached.
struct Mat2 {
  double m00{1}, m01{0}, m10{0}, m11{1};
  double det{1};

  Mat2() = default;
  Mat2(double a, double b, double c, double d)
      : m00(a), m01(b), m10(c), m11(d), det(a * d - b * c) {}

  static Mat2 identity() { return Mat2(1, 0, 0, 1); }
  static Mat2 rotation(double theta);
  static Mat2 diagonal(double top, double bottom) { return Mat2(top, 0, 0, bottom); }

  Mat2 operator*(const Mat2& o) const {
    return Mat2(m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11);
  }
  Mat2 operator+(const Mat2& o) const {
    return Mat2(m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11);
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2(m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11);
  }
  Mat2 scaled(double s) const { return Mat2(s * m00, s * m01, s * m10, s * m11); }
  Mat2 transpose() const { return Mat2(m00, m10, m01, m11); }
  Mat2 adjugate() const { return Mat2(m11, -m01, -m10, m00); }  // inverse * det
  Mat2 inverse() const;  // throws DegenerateMatrix when |det| < 1e-14

  double max_abs() const;
  // Apply to a unit vector at the given direction; returns (length, direction).
  void apply_direction(double angle, double& out_len, double& out_angle) const;
};

bool is_sl2(const Mat2& m, double tol = 1e-9);

struct Svd2 {
  double sigma1{0};        // = operator norm
  double sigma2{0};        // = |det| / sigma1
  double expand_dir{0};    // right-singular direction of sigma1 (mod pi)
  double contract_dir{0};  // right-singular direction of sigma2 (mod pi)
};

// Closed-form SVD data from the eigen-decomposition of M^T M.
Svd2 svd2(const Mat2& m);

double operator_norm(const Mat2& m);  // sigma1
double co_norm(const Mat2& m);        // sigma2 = inf_{|v|=1} |Mv|

// Open arc of directions on the projective line: the directions whose
// angular distance (mod pi) to `center` is strictly less than `half_width`.
// half_width == pi/2 represents the full line.
struct ProjectiveArc {
  double center;
  double half_width;

  ProjectiveArc(double c, double h);
  static ProjectiveArc full_line() { return ProjectiveArc(0.0, kPi / 2); }

  bool is_full() const { return half_width >= kPi / 2; }
  bool contains_direction(double angle, double margin = 0.0) const {
    if (is_full()) return true;
    return proj_dist(angle, center) + margin < half_width;
  }
};

inline constexpr double kArcSlack = 1e-9;  // outward slack in rigorous mode

// Image of the direction set under v -> Mv.  An invertible matrix maps an
// arc of the projective line onto an arc; endpoints map to endpoints.
ProjectiveArc arc_image(const Mat2& m, const ProjectiveArc& arc, bool rigorous = false);

// True iff `inner` dilated by `margin` is contained in `outer`.
bool arc_contains(const ProjectiveArc& outer, const ProjectiveArc& inner, double margin);

// Signed slack of the inclusion: positive means inner+margin fits strictly.
double arc_containment_slack(const ProjectiveArc& outer, const ProjectiveArc& inner);

// inf over unit vectors with direction in the (closure of the) arc of |Mv|.
double min_growth_on_arc(const Mat2& m, const ProjectiveArc& arc);

// Smallest arc containing all the inputs.  Reports the full line when the
// union leaves no gap wider than gap_floor.
ProjectiveArc arc_hull(const std::vector<ProjectiveArc>& arcs, double gap_floor = 1e-12);

}  // namespace cocyclelab
