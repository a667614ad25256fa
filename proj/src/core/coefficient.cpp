#include "chromatic/coefficient.hpp"

#include <limits>

namespace chromatic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(std::uint64_t p) {
  if (p == 2) throw PreconditionError("p = 2 is not supported; p must be an odd prime");
  if (!is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not a prime");
  if (p > 65521) throw PreconditionError("p = " + std::to_string(p) + " is too large");
}

std::int64_t ipow(std::int64_t p, int e) {
  if (e < 0) throw PreconditionError("negative exponent in ipow");
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > std::numeric_limits<std::int64_t>::max() / (p == 0 ? 1 : p))
      throw PreconditionError("integer overflow computing p^e");
    r *= p;
  }
  return r;
}

}  // namespace chromatic
