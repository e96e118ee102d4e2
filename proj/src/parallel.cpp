#include "eisenrest/parallel.hpp"

#include <cstdlib>
#include <string>

#include "eisenrest/errors.hpp"

namespace eisenrest {

int threads_from_env() {
  const char* raw = std::getenv("EISENREST_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  const std::string text(raw);
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw DomainError("EISENREST_THREADS must be a positive integer, got '" + text + "'");
}

}  // namespace eisenrest
