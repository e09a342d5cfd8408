// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace kpzlab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM0, c[0], hi0, lo0);
  mul_hi_lo(kPhiloxM1, c[2], hi1, lo1);
  const std::uint32_t out0 = hi1 ^ c[1] ^ k[0];
  const std::uint32_t out1 = lo1;
  const std::uint32_t out2 = hi0 ^ c[3] ^ k[1];
  const std::uint32_t out3 = lo0;
  c[0] = out0;
  c[1] = out1;
  c[2] = out2;
  c[3] = out3;
}

}  // namespace

RandomStream::RandomStream(SeedSpec seed) : seed_(seed) {
  key_[0] = static_cast<std::uint32_t>(seed.master_seed);
  key_[1] = static_cast<std::uint32_t>(seed.master_seed >> 32);
  counter_[0] = 0;
  counter_[1] = 0;
  counter_[2] = static_cast<std::uint32_t>(seed.stream_id);
  counter_[3] = static_cast<std::uint32_t>(seed.stream_id >> 32);
}

void RandomStream::refill() {
  std::uint32_t c[4] = {counter_[0], counter_[1], counter_[2], counter_[3]};
  std::uint32_t k[2] = {key_[0], key_[1]};
  for (int round = 0; round < 10; ++round) {
    philox_round(c, k);
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  block_[0] = c[0];
  block_[1] = c[1];
  block_[2] = c[2];
  block_[3] = c[3];
  block_pos_ = 0;
  if (++counter_[0] == 0) ++counter_[1];  // 64-bit block counter per stream
}

std::uint32_t RandomStream::next_u32() {
  if (block_pos_ >= 4) refill();
  return block_[block_pos_++];
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RandomStream::uniform() {
  // 53 significant bits; +1 keeps the value strictly positive.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform_sym() {
  return 2.0 * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53) - 1.0 + 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u, v, s;
  do {
    u = uniform_sym();
    v = uniform_sym();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_gaussian_ = v * f;
  has_cached_gaussian_ = true;
  return u * f;
}

double RandomStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::invalid_argument("gamma: shape and scale must be positive");
  }
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^{1/a}.
    const double g = gamma(shape + 1.0, 1.0);
    return scale * g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return scale * d * v;
    }
  }
}

double RandomStream::chi(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("chi: parameter must be positive");
  }
  return std::sqrt(gamma(0.5 * a, 2.0));
}

double RandomStream::matched_raw() {
  static const double root3 = std::sqrt(3.0);
  const double u = uniform();
  if (u <= 1.0 / 6.0) return root3;
  if (u <= 2.0 / 6.0) return -root3;
  return 0.0;
}

double matched_diagonal(RandomStream& rs, int beta) {
  if (beta == 1) return std::sqrt(2.0) * rs.matched_raw();
  if (beta == 2) return rs.matched_raw();
  throw std::invalid_argument("matched_diagonal: beta must be 1 or 2");
}

double matched_offdiagonal_real(RandomStream& rs) { return rs.matched_raw(); }

std::complex<double> matched_offdiagonal_complex(RandomStream& rs) {
  static const double inv_root2 = 1.0 / std::sqrt(2.0);
  const double re = rs.matched_raw();
  const double im = rs.matched_raw();
  return {re * inv_root2, im * inv_root2};
}

}  // namespace kpzlab
