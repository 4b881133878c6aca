#include "pvtee/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pvtee {

unsigned default_threads() {
  if (const char* env = std::getenv("PVTEE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace pvtee
