#include "capbound/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace capbound {

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  if (const char* env = std::getenv("CAPBOUND_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) n = std::min(n, cap);
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace capbound
