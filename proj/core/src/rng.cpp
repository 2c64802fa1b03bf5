#include "mbh/rng.hpp"

namespace mbh {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::int64_t j, std::int64_t draw, StreamRole role) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  const auto uj = static_cast<std::uint64_t>(j);
  const auto ud = static_cast<std::uint64_t>(draw);
  std::seed_seq seq{lo(seed), hi(seed), lo(uj), hi(uj), lo(ud), hi(ud), static_cast<std::uint32_t>(role)};
  return std::mt19937_64(seq);
}

}  // namespace

SubstreamRng::SubstreamRng(std::uint64_t seed, std::int64_t j, std::int64_t draw, StreamRole role)
    : engine_(make_engine(seed, j, draw, role)) {}

}  // namespace mbh
