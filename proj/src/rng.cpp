#include "heatmc/rng.hpp"

#include <sstream>

#include "heatmc/error.hpp"

namespace heatmc {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t RandomStream::index(std::uint64_t n) {
  if (n <= 1) return 0;
  // Reject the low residue class so x % n is exactly uniform.
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = engine_();
  while (x < threshold) x = engine_();
  return x % n;
}

std::string RandomStream::state() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

void RandomStream::restore(const std::string& text) {
  std::istringstream is(text);
  is >> engine_;
  if (is.fail()) throw InputError("corrupt random stream state");
}

}  // namespace heatmc
