// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstddef>

// Physical address map of the simulated SoC.
namespace rctee::layout {

// Reserved secure region for IP invocation I/O (TOS-only).
inline constexpr uint64_t kSecureBase = 0x7000'0000;
inline constexpr uint64_t kSecureEnd = 0x7010'0000;
inline constexpr size_t kSecureSize = size_t(kSecureEnd - kSecureBase);

// REE<->TEE shared buffer; sized to hold the largest deployable bitstream.
inline constexpr uint64_t kSharedBase = 0x6000'0000;
inline constexpr size_t kSharedSize = 64u << 20;
inline constexpr uint64_t kSharedEnd = kSharedBase + kSharedSize;

// On-chip memory; boot measurements stage in the last chunk.
inline constexpr size_t kOcmSize = 256u << 10;
inline constexpr size_t kOcmChunkSize = 4096;
inline constexpr size_t kOcmMeasOffset = kOcmSize - kOcmChunkSize;

inline constexpr bool in_secure_region(uint64_t addr) {
  return addr >= kSecureBase && addr < kSecureEnd;
}
inline constexpr bool in_shared_region(uint64_t addr) {
  return addr >= kSharedBase && addr < kSharedEnd;
}

// Execution-state word written at an IP's status address.
enum class IpStatus : uint32_t { Idle = 0, Running = 1, Done = 2, Fault = 3 };

}  // namespace rctee::layout
