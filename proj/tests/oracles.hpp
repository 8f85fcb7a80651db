#pragma once

// Test-only oracles, independent of the library implementation paths they
// cross-check.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "cocyclelab/cocycle.hpp"

namespace oracles {

using cocyclelab::Mat2;
using cocyclelab::ProjectiveArc;
using cocyclelab::Symbol;
using cocyclelab::Word;

// Smallest m >= 1 with (Q^m)_{ab} > 0 via boolean matrix powers; -1 if none
// up to the bound.
inline int min_power_reaching(const std::vector<std::vector<int>>& q, Symbol a, Symbol b,
                              int bound = 64) {
  const int n = static_cast<int>(q.size());
  std::vector<std::vector<int>> pow = q;
  for (int m = 1; m <= bound; ++m) {
    if (pow[a][b] > 0) return m;
    std::vector<std::vector<int>> next(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (pow[i][k])
          for (int j = 0; j < n; ++j)
            if (q[k][j]) next[i][j] = 1;
    pow = std::move(next);
  }
  return -1;
}

// Aperiodic binary necklaces of length n: (1/n) sum_{d|n} mu(d) 2^{n/d}.
inline long long necklace_count(int n) {
  auto mobius = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        result = -result;
      }
    }
    if (m > 1) result = -result;
    return result;
  };
  long long total = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) total += mobius(d) * (1LL << (n / d));
  return total / n;
}

// Norm of M u(angle).
inline double growth_at(const Mat2& m, double angle) {
  const double ux = std::cos(angle), uy = std::sin(angle);
  return std::hypot(m.m00 * ux + m.m01 * uy, m.m10 * ux + m.m11 * uy);
}

inline double sampled_operator_norm(const Mat2& m, int samples = 200000) {
  double best = 0;
  for (int i = 0; i < samples; ++i)
    best = std::max(best, growth_at(m, cocyclelab::kPi * i / samples));
  return best;
}

inline double sampled_min_growth(const Mat2& m, const ProjectiveArc& arc,
                                 int samples = 200000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double a = arc.center - arc.half_width +
                     2 * arc.half_width * (static_cast<double>(i) / samples);
    best = std::min(best, growth_at(m, a));
  }
  return best;
}

// Direction of M u(angle), mod pi.
inline double image_direction(const Mat2& m, double angle) {
  const double ux = std::cos(angle), uy = std::sin(angle);
  return cocyclelab::wrap_pi(std::atan2(m.m10 * ux + m.m11 * uy, m.m00 * ux + m.m01 * uy));
}

// Naive unrenormalized product of A along the orbit (safe for small n):
// A^n(x) = A(T^{n-1}x)...A(x);  A^{-n}(x) = A(T^{-n}x)^{-1}...A(T^{-1}x)^{-1}.
inline Mat2 naive_product(const cocyclelab::CocycleSpec& spec,
                          const cocyclelab::SymbolSequence& x, long long n) {
  Mat2 acc = Mat2::identity();
  if (n >= 0) {
    for (long long k = 0; k < n; ++k) acc = evaluate_at(spec, x, k) * acc;
  } else {
    for (long long k = 1; k <= -n; ++k) acc = evaluate_at(spec, x, -k).inverse() * acc;
  }
  return acc;
}

// Eigenvalue moduli of a 2x2 matrix by the quadratic formula.
inline std::pair<double, double> eigen_moduli(const Mat2& m) {
  const double tr = m.m00 + m.m11;
  const double disc = tr * tr - 4 * m.det;
  if (disc >= 0) {
    const double r = std::sqrt(disc);
    return {std::fabs((tr + r) / 2), std::fabs((tr - r) / 2)};
  }
  const double mod = std::sqrt(m.det);  // complex pair: |mu| = sqrt(det)
  return {mod, mod};
}

inline Mat2 random_sl2_near_identity(std::mt19937_64& rng, double stretch_cap) {
  std::uniform_real_distribution<double> angle(0.0, cocyclelab::kPi);
  std::uniform_real_distribution<double> s(0.0, stretch_cap);
  const double t = s(rng);
  return Mat2::rotation(angle(rng)) * Mat2::diagonal(std::exp(t), std::exp(-t)) *
         Mat2::rotation(angle(rng));
}

// Random admissible eventually-periodic point over the full 2-shift with a
// core window [-span, span].
inline cocyclelab::SymbolSequence random_binary_point(std::mt19937_64& rng, long long span) {
  std::uniform_int_distribution<int> bit(0, 1);
  Word core(static_cast<std::size_t>(2 * span + 1));
  for (auto& c : core) c = bit(rng);
  Word left{bit(rng)}, right{bit(rng)};
  return cocyclelab::SymbolSequence(left, core, -span, right);
}

}  // namespace oracles
