#include "annealm/csvio.hpp"

#include <charconv>

namespace annealm {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace annealm
