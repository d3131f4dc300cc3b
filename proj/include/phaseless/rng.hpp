#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "phaseless/types.hpp"

namespace phaseless {

/// Mixes a master seed with a list of stream coordinates into a new seed.
/// Used to give every (restart, trial, ...) its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seedable generator with bit-reproducible output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform and normal variates are produced here rather than with
/// the <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via the Marsaglia polar method.
  double normal();
  /// Real and imaginary parts each N(0, 1).
  Complex complex_normal();

  ComplexVector complex_normal_vector(Index n);
  RealVector normal_vector(Index n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace phaseless
