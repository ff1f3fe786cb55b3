// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rctee/errors.hpp"

namespace rctee {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteSpan b) {
  return std::string(b.begin(), b.end());
}

template <size_t N>
std::array<uint8_t, N> to_array(ByteSpan b) {
  if (b.size() != N) raise(Err::BadParams, "expected " + std::to_string(N) + " bytes");
  std::array<uint8_t, N> out;
  std::memcpy(out.data(), b.data(), N);
  return out;
}

inline void append(Bytes& out, ByteSpan b) { out.insert(out.end(), b.begin(), b.end()); }

// All multi-byte integers in file and wire formats are big-endian.
inline void put_u8(Bytes& out, uint8_t v) { out.push_back(v); }
inline void put_u16(Bytes& out, uint16_t v) {
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}
inline void put_u32(Bytes& out, uint32_t v) {
  put_u16(out, uint16_t(v >> 16));
  put_u16(out, uint16_t(v));
}
inline void put_u64(Bytes& out, uint64_t v) {
  put_u32(out, uint32_t(v >> 32));
  put_u32(out, uint32_t(v));
}

inline std::array<uint8_t, 8> u64_be(uint64_t v) {
  std::array<uint8_t, 8> out;
  for (int i = 7; i >= 0; --i) {
    out[size_t(i)] = uint8_t(v);
    v >>= 8;
  }
  return out;
}

/// Bounds-checked sequential reader over a byte span. Every decode path in
/// the project goes through this; truncation surfaces as MALFORMED.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

  ByteSpan take(size_t n) {
    if (remaining() < n) raise(Err::Malformed, "truncated input");
    ByteSpan out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  uint8_t u8() { return take(1)[0]; }
  uint16_t u16() {
    auto b = take(2);
    return uint16_t(uint16_t(b[0]) << 8 | b[1]);
  }
  uint32_t u32() {
    uint32_t hi = u16();
    return hi << 16 | u16();
  }
  uint64_t u64() {
    uint64_t hi = u32();
    return hi << 32 | u32();
  }

  template <size_t N>
  std::array<uint8_t, N> arr() {
    return to_array<N>(take(N));
  }

  /// Fails decode when trailing bytes remain.
  void expect_end() const {
    if (!done()) raise(Err::Malformed, "trailing bytes");
  }

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

std::string hex_encode(ByteSpan b);
Bytes hex_decode(std::string_view s);  // throws BAD_PARAMS on odd length / bad digit

}  // namespace rctee
