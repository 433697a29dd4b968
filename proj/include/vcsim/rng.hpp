#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace vcsim {

// One deterministic pseudorandom stream. Copyable, so tests can clone a
// stream and replay draws. Distribution math is implemented by hand instead
// of <random> distributions so that sequences are identical on every
// standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::logic_error("uniform_index: empty range");
    std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Exponential with the given rate (events per unit time).
  double exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log1p(-uniform()) / rate;
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// A set of named streams derived from one master seed. Each stream's seed is
// a function of (master seed, name) only, so creating or drawing from one
// stream never perturbs another, and the creation order of streams is
// irrelevant.
class RngSet {
 public:
  explicit RngSet(std::uint64_t master_seed) : master_(master_seed) {}

  RngStream& create(const std::string& name) {
    auto [it, inserted] = streams_.try_emplace(name, RngStream(derive_seed(name)));
    return it->second;
  }

  // Fails on unknown names: drawing from a stream that was never created is
  // a programming error, not an implicit registration.
  RngStream& stream(const std::string& name) {
    auto it = streams_.find(name);
    if (it == streams_.end())
      throw std::logic_error("unknown rng stream: " + name);
    return it->second;
  }

  bool has(const std::string& name) const { return streams_.count(name) > 0; }

  std::uint64_t derive_seed(const std::string& name) const {
    return splitmix(master_ ^ fnv1a(name));
  }

 private:
  static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  // Finalizer from splitmix64; spreads structured seeds over the full range.
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97f4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t master_;
  std::map<std::string, RngStream> streams_;
};

}  // namespace vcsim
