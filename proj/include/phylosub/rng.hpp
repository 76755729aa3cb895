#pragma once

#include <cstdint>
#include <random>

namespace phylosub::rng {

using Engine = std::mt19937_64;

// Randomness domains. Each domain draws from its own substream family so a
// regime that consumes more sampling randomness never shifts mutation or
// selection outcomes for the same master seed.
enum class Stream : std::uint64_t {
  sampling = 0x73616d706c696e67ull,
  mutation = 0x6d75746174696f6eull,
  selection = 0x73656c6563740a0aull,
};

// SplitMix64 finalizer; full-period mixing of a 64-bit state.
inline constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic substream: (master seed, domain, stream id) -> engine.
// Stream ids follow generation * pop_size + index so per-individual and
// per-event draws are independent and replayable in isolation.
inline Engine make_stream(std::uint64_t master_seed, Stream domain, std::uint64_t stream_id) {
  std::uint64_t s = mix(master_seed);
  s = mix(s ^ static_cast<std::uint64_t>(domain));
  s = mix(s ^ stream_id);
  return Engine{s};
}

// Uniform draw in [0, n). n must be positive.
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>{0, n - 1}(eng);
}

}  // namespace phylosub::rng
