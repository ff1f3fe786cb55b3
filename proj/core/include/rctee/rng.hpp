// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>

#include "rctee/bytes.hpp"

namespace rctee {

/// Randomness source. Simulation code takes an explicit Rng so callers
/// (tests, the harness) control determinism; services default to SystemRng.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  Bytes bytes(size_t n) {
    Bytes out(n);
    fill(out);
    return out;
  }

  uint64_t u64() {
    uint8_t b[8];
    fill(b);
    uint64_t v = 0;
    for (uint8_t x : b) v = v << 8 | x;
    return v;
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return double(u64() >> 11) * 0x1.0p-53; }

  /// Gaussian sample via Box-Muller; mean 0, standard deviation sigma.
  double gaussian(double sigma) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }
};

/// OS-backed randomness (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void fill(std::span<uint8_t> out) override;
};

/// Deterministic Rng backed by the crypto drbg stream.
class DrbgRng final : public Rng {
 public:
  explicit DrbgRng(ByteSpan seed);
  ~DrbgRng() override;
  void fill(std::span<uint8_t> out) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rctee
