#pragma once

#include <cstdint>
#include <random>

namespace mbh {

// Independent substream keyed by (seed, j, draw, role): std::mt19937_64
// seeded through std::seed_seq, whose output is fixed by the standard.
// Geometry draws do not depend on how many bases are compared.
enum class StreamRole : std::uint32_t { Axis = 1, Sources = 2, Targets = 3, Translation = 4 };

class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::int64_t j, std::int64_t draw, StreamRole role);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mbh
