#pragma once

#include <cstdint>
#include <random>

namespace dqr {

// SplitMix64 mix; used to spread seed material before it reaches an engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One stream per worker. Every sampler consumes only from the owned engine,
// so a stream's draw sequence does not depend on what other streams do or on
// the order in which workers are scheduled.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Deterministic child stream; distinct index tuples give distinct streams.
  RngStream child(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

  double uniform();                 // open interval (0, 1)
  double normal();                  // standard normal
  double exponential(double rate);  // mean 1/rate
  double gamma(double shape);       // unit scale
  double chi_squared(double dof);

  std::uint64_t seed_material() const { return key_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dqr
