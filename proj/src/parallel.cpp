#include "cue/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "cue/errors.hpp"

namespace cue {

int worker_count() {
  if (const char* env = std::getenv("CUE_SFF_THREADS")) {
    const std::string s(env);
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || v < 1)
      throw ConfigError("CUE_SFF_THREADS must be a positive integer, got '" + s + "'");
    return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace cue
