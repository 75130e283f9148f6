#ifndef MANCALA_RANDOM_H_
#define MANCALA_RANDOM_H_

#include <cstdint>
#include <random>
#include <string>

namespace mancala {

// SplitMix64 finalizer over (base, index). Used to give every game, seat
// and session its own stream from a single master seed.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

// Seeded stream with draw routines that do not depend on the standard
// library's distribution implementations, so sequences are identical
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of precision.
  double Uniform01();
  // Uniform on [0, n); n must be > 0.
  std::size_t UniformIndex(std::size_t n);

  // Engine state as text, for session snapshots.
  std::string Serialize() const;
  static Rng Deserialize(const std::string& text);

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace mancala

#endif  // MANCALA_RANDOM_H_
