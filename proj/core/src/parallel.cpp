#include "tsgc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace tsgc {

int thread_budget() {
  int autodetect = static_cast<int>(std::thread::hardware_concurrency());
  if (autodetect < 1) autodetect = 1;
  const char* env = std::getenv("TSGC_THREADS");
  if (env == nullptr || *env == '\0') return autodetect;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return autodetect;
  if (v == 0) return autodetect;
  return static_cast<int>(v);
}

}  // namespace tsgc
