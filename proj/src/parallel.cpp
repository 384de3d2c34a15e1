#include "spinglass/parallel.hpp"

#include <cstdlib>
#include <string>

namespace spinglass {

int worker_count() {
  if (const char* env = std::getenv("SPINGLASS_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

double pairwise_sum(std::span<const double> values) noexcept {
  if (values.size() <= 8) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace spinglass
