// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rctee/crypto.hpp"
#include "rctee/rng.hpp"

// Software model of the ring-oscillator PUF: per-device manufacturing
// variation of oscillator frequencies, noisy pairwise frequency comparison
// with majority voting, CRP enrollment, and seed extraction.
namespace rctee::puf {

inline constexpr size_t kDefaultOscCount = 64;
inline constexpr double kBaseFrequencyHz = 100e6;
inline constexpr double kFrequencySpreadHz = 1e6;
inline constexpr double kDefaultNoiseSigmaHz = 2e3;
inline constexpr double kDefaultCountIntervalS = 1e-3;
inline constexpr int kDefaultVoteCount = 11;
inline constexpr size_t kMaxChallengePairs = 256;
inline constexpr size_t kEnrollChallengePairs = 64;
inline constexpr size_t kSeedChallengePairs = 256;

struct RoPufModel {
  crypto::Key32 device_seed{};
  size_t osc_count = 0;
  std::vector<double> frequencies_hz;  // deterministic in device_seed
  double noise_sigma_hz = 0.0;
  double count_interval_s = 0.0;
  int vote_count = 0;  // odd
};

/// One response bit per (i, j) oscillator pair; i != j.
struct PairSelect {
  uint8_t i = 0;
  uint8_t j = 0;
  bool operator==(const PairSelect&) const = default;
};

struct Challenge {
  std::vector<PairSelect> pairs;
  bool operator==(const Challenge&) const = default;
};

struct Response {
  std::vector<uint8_t> bits;  // one 0/1 entry per challenge pair
  bool operator==(const Response&) const = default;
};

struct CrpEntry {
  Challenge challenge;
  Response response;
  bool consumed = false;
};

struct CrpSet {
  std::vector<CrpEntry> entries;
};

/// Builds the per-device model. Frequencies are F_BASE + spread * u_i with
/// u_i in [-1, 1) decoded from drbg(device_seed), 8 bytes per oscillator.
RoPufModel instantiate(ByteSpan device_seed32,
                       size_t osc_count = kDefaultOscCount,
                       double noise_sigma_hz = kDefaultNoiseSigmaHz,
                       double count_interval_s = kDefaultCountIntervalS,
                       int vote_count = kDefaultVoteCount);

/// Single noisy comparison: count_x = floor((f_x + gauss(0, sigma)) * T);
/// returns 1 when count_i > count_j, 0 otherwise (ties give 0).
int evaluate_bit(const RoPufModel& model, size_t i, size_t j, Rng& rng);

/// Majority over `vote_count` independent evaluate_bit trials per pair.
Response evaluate(const RoPufModel& model, const Challenge& challenge, Rng& rng);

/// Draws `count` distinct challenges of kEnrollChallengePairs pairs from the
/// stream (rejecting i == j pairs and duplicate challenges) and evaluates
/// each with the model's vote count.
CrpSet enroll_crps(const RoPufModel& model, size_t count,
                   crypto::DrbgStream& challenge_source, Rng& noise_rng);

/// Extracts a 32-byte seed from a 256-pair challenge:
/// hash(response bits packed MSB-first) truncated to 32 bytes.
crypto::Key32 seed_from_puf(const RoPufModel& model, const Challenge& challenge, Rng& rng);

/// Draws one challenge of `pair_count` pairs from the stream, rejecting
/// i == j pairs. Indices are stream bytes reduced mod osc_count.
Challenge draw_challenge(crypto::DrbgStream& source, size_t pair_count, size_t osc_count);

/// Packs response bits MSB-first; the first bit lands in the most
/// significant position of the first byte.
Bytes pack_bits(const Response& r);

crypto::Key32 seed_from_response(const Response& r);

// Wire encodings (normative): challenge is count(u16) then two index bytes
// per pair; response is bit count(u16) then packed bits.
Bytes encode_challenge(const Challenge& c);
Challenge decode_challenge(ByteSpan b);
Bytes encode_response(const Response& r);
Response decode_response(ByteSpan b);

void validate_challenge(const Challenge& c, size_t osc_count);

}  // namespace rctee::puf
