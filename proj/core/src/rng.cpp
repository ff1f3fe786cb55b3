// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/rng.hpp"

#include <openssl/rand.h>

#include "rctee/crypto.hpp"

namespace rctee {

void SystemRng::fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), int(out.size())) != 1)
    raise(Err::Io, "system randomness unavailable");
}

struct DrbgRng::Impl {
  explicit Impl(ByteSpan seed) : stream(seed) {}
  crypto::DrbgStream stream;
};

DrbgRng::DrbgRng(ByteSpan seed) : impl_(std::make_unique<Impl>(seed)) {}
DrbgRng::~DrbgRng() = default;

void DrbgRng::fill(std::span<uint8_t> out) { impl_->stream.fill(out); }

}  // namespace rctee
