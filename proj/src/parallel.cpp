#include "smoothcond/parallel.hpp"

#include <cstdlib>
#include <string>

namespace smoothcond {

int default_workers() {
  if (const char* env = std::getenv("SMOOTHCOND_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace smoothcond
