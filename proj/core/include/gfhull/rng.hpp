#pragma once

#include <cstdint>

// Counter-based random number generation.
//
// Every draw in this project is a pure function of (master seed, stream path,
// counter).  There is no mutable generator state, so replicate-level
// parallelism cannot change results and aggregation order never matters.
//
// Derivation tree (stable; changing it invalidates recorded runs):
//   replicate key   K = fold(fold(master_seed, stream tag), replicate)
//   field draws     normal(fold(K, stream::field, component), site_index)
//   spectral draws  normal(fold(K, stream::spectral, component), 2*freq [+1])
//   equicorrelated  eta  = normal(fold(K, stream::eta), 0)
//                   zeta = normal(fold(K, stream::zeta), k)
//   uniform helpers normal/uniform(fold(K, stream::aux), counter)
//
// The generator is the splitmix64 finalizer applied twice:
//   u64(key, ctr) = mix64(key ^ mix64(ctr)),
// which is bijective in ctr for a fixed key (no counter collisions).
// Normals come from the AS 241 inverse normal quantile applied to the top
// 53 bits of the hash, so one counter value yields exactly one normal.

namespace gfhull::rng {

// splitmix64 finalizer (Vigna / Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fold a word into a key (hash_combine style, then full avalanche).
constexpr std::uint64_t fold(std::uint64_t key, std::uint64_t word) noexcept {
  return mix64(key ^ (word + 0x9e3779b97f4a7c15ULL + (key << 6) + (key >> 2)));
}

namespace stream {
inline constexpr std::uint64_t replicate = 0x5245504cU;  // "REPL"
inline constexpr std::uint64_t field = 0x464c4400U;      // "FLD"
inline constexpr std::uint64_t spectral = 0x53504543U;   // "SPEC"
inline constexpr std::uint64_t eta = 0x45544100U;        // "ETA"
inline constexpr std::uint64_t zeta = 0x5a455441U;       // "ZETA"
inline constexpr std::uint64_t aux = 0x41555800U;        // "AUX"
}  // namespace stream

constexpr std::uint64_t replicate_key(std::uint64_t master_seed,
                                      std::uint64_t replicate) noexcept {
  return fold(fold(master_seed, stream::replicate), replicate);
}

constexpr std::uint64_t draw_u64(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(key ^ mix64(counter));
}

// Top 53 bits mapped into the open interval (0, 1).
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

constexpr double uniform(std::uint64_t key, std::uint64_t counter) noexcept {
  return to_unit(draw_u64(key, counter));
}

// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16).
// Relative accuracy around 1e-15 on (0, 1).
double normal_quantile(double p);

inline double normal(std::uint64_t key, std::uint64_t counter) {
  return normal_quantile(uniform(key, counter));
}

}  // namespace gfhull::rng
