#include "dqr/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dqr {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

RngStream::RngStream(std::uint64_t seed)
    : key_(seed), engine_(splitmix64(seed)) {}

RngStream RngStream::child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
  std::uint64_t k = key_;
  k = splitmix64(k ^ (a + 0x1ULL));
  k = splitmix64(k ^ (b + 0x2ULL));
  k = splitmix64(k ^ (c + 0x3ULL));
  return RngStream(k);
}

double RngStream::uniform() {
  // 53-bit mantissa, shifted into the open interval (0, 1).
  const std::uint64_t u = engine_();
  return (static_cast<double>(u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential: rate must be positive");
  return -std::log(uniform()) / rate;
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost a shape>=1 draw down (Marsaglia-Tsang augmentation).
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::chi_squared(double dof) {
  if (!(dof > 0.0)) throw std::domain_error("chi_squared: dof must be positive");
  return 2.0 * gamma(0.5 * dof);
}

}  // namespace dqr
