#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <numeric>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace cocyclelab {

inline constexpr double kPi = 3.14159265358979323846;

// Reduce an angle to [0, pi).  Directions on the projective line are taken
// mod pi throughout.
inline double wrap_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

// Angular distance between two directions, in [0, pi/2].
inline double proj_dist(double a, double b) {
  double d = std::fabs(wrap_pi(a) - wrap_pi(b));
  return std::min(d, kPi - d);
}

// Thread cap: COCYCLE_LAB_THREADS, else hardware concurrency (at least 1).
int max_threads();

// Deterministic parallel map: order of results matches the input order
// regardless of scheduling.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F&& fn)
    -> std::vector<decltype(fn(items.front()))> {
  using R = decltype(fn(items.front()));
  std::vector<R> out(items.size());
  const int threads = max_threads();
  if (threads <= 1 || items.size() < 16) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  const std::size_t chunks = std::min<std::size_t>(threads, items.size());
  std::vector<std::future<void>> futs;
  futs.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    futs.push_back(std::async(std::launch::async, [&, c]() {
      for (std::size_t i = c; i < items.size(); i += chunks) out[i] = fn(items[i]);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Shortest text with 17 significant digits; round-trips doubles exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline long long lcm_ll(long long a, long long b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace cocyclelab
