#include "cocyclelab/util.hpp"

#include <cstdlib>

namespace cocyclelab {

int max_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("COCYCLE_LAB_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

}  // namespace cocyclelab
