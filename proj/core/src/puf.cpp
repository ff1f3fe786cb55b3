// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/puf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rctee::puf {

RoPufModel instantiate(ByteSpan device_seed32, size_t osc_count, double noise_sigma_hz,
                       double count_interval_s, int vote_count) {
  if (device_seed32.size() != 32) raise(Err::BadParams, "device seed must be 32 bytes");
  if (osc_count < 2 || osc_count > 256) raise(Err::BadParams, "oscillator count out of range");
  if (noise_sigma_hz < 0.0) raise(Err::BadParams, "negative noise sigma");
  if (count_interval_s <= 0.0) raise(Err::BadParams, "non-positive count interval");
  if (vote_count < 1 || vote_count % 2 == 0) raise(Err::BadParams, "vote count must be odd");

  RoPufModel model;
  model.device_seed = to_array<32>(device_seed32);
  model.osc_count = osc_count;
  model.noise_sigma_hz = noise_sigma_hz;
  model.count_interval_s = count_interval_s;
  model.vote_count = vote_count;

  crypto::DrbgStream stream(device_seed32);
  model.frequencies_hz.reserve(osc_count);
  for (size_t i = 0; i < osc_count; ++i) {
    double unit = double(stream.u64()) * 0x1.0p-64;  // [0, 1)
    model.frequencies_hz.push_back(kBaseFrequencyHz + kFrequencySpreadHz * (2.0 * unit - 1.0));
  }
  return model;
}

int evaluate_bit(const RoPufModel& model, size_t i, size_t j, Rng& rng) {
  if (i >= model.osc_count || j >= model.osc_count) raise(Err::BadParams, "oscillator index");
  if (i == j) raise(Err::SameIndex, "challenge selects one oscillator twice");
  auto count = [&](size_t idx) {
    double f = model.frequencies_hz[idx] + rng.gaussian(model.noise_sigma_hz);
    return int64_t(std::floor(f * model.count_interval_s));
  };
  int64_t ci = count(i);
  int64_t cj = count(j);
  return ci > cj ? 1 : 0;
}

void validate_challenge(const Challenge& c, size_t osc_count) {
  if (c.pairs.empty() || c.pairs.size() > kMaxChallengePairs)
    raise(Err::BadParams, "challenge length out of range");
  for (const auto& p : c.pairs) {
    if (p.i >= osc_count || p.j >= osc_count) raise(Err::BadParams, "oscillator index");
    if (p.i == p.j) raise(Err::SameIndex, "challenge selects one oscillator twice");
  }
}

Response evaluate(const RoPufModel& model, const Challenge& challenge, Rng& rng) {
  validate_challenge(challenge, model.osc_count);
  Response r;
  r.bits.reserve(challenge.pairs.size());
  for (const auto& p : challenge.pairs) {
    int votes = 0;
    for (int k = 0; k < model.vote_count; ++k) votes += evaluate_bit(model, p.i, p.j, rng);
    r.bits.push_back(uint8_t(2 * votes > model.vote_count));
  }
  return r;
}

Challenge draw_challenge(crypto::DrbgStream& source, size_t pair_count, size_t osc_count) {
  Challenge c;
  c.pairs.reserve(pair_count);
  while (c.pairs.size() < pair_count) {
    uint8_t i = uint8_t(source.u8() % osc_count);
    uint8_t j = uint8_t(source.u8() % osc_count);
    if (i == j) continue;
    c.pairs.push_back({i, j});
  }
  return c;
}

CrpSet enroll_crps(const RoPufModel& model, size_t count, crypto::DrbgStream& challenge_source,
                   Rng& noise_rng) {
  if (count < 1) raise(Err::BadParams, "crp count must be positive");
  CrpSet set;
  set.entries.reserve(count);
  std::set<std::vector<PairSelect>> seen;
  while (set.entries.size() < count) {
    Challenge c = draw_challenge(challenge_source, kEnrollChallengePairs, model.osc_count);
    if (!seen.insert(c.pairs).second) continue;  // duplicate challenge, redraw
    CrpEntry entry;
    entry.challenge = std::move(c);
    entry.response = evaluate(model, entry.challenge, noise_rng);
    set.entries.push_back(std::move(entry));
  }
  return set;
}

Bytes pack_bits(const Response& r) {
  Bytes out((r.bits.size() + 7) / 8, 0);
  for (size_t n = 0; n < r.bits.size(); ++n)
    if (r.bits[n]) out[n / 8] |= uint8_t(0x80u >> (n % 8));
  return out;
}

crypto::Key32 seed_from_response(const Response& r) {
  crypto::Digest d = crypto::hash(pack_bits(r));
  crypto::Key32 seed;
  std::copy_n(d.begin(), seed.size(), seed.begin());
  return seed;
}

crypto::Key32 seed_from_puf(const RoPufModel& model, const Challenge& challenge, Rng& rng) {
  if (challenge.pairs.size() != kSeedChallengePairs)
    raise(Err::BadParams, "seed challenge must have 256 pairs");
  return seed_from_response(evaluate(model, challenge, rng));
}

Bytes encode_challenge(const Challenge& c) {
  if (c.pairs.size() > kMaxChallengePairs) raise(Err::BadParams, "challenge too long");
  Bytes out;
  put_u16(out, uint16_t(c.pairs.size()));
  for (const auto& p : c.pairs) {
    put_u8(out, p.i);
    put_u8(out, p.j);
  }
  return out;
}

Challenge decode_challenge(ByteSpan b) {
  ByteReader r(b);
  Challenge c;
  size_t n = r.u16();
  if (n == 0 || n > kMaxChallengePairs) raise(Err::Malformed, "challenge pair count");
  c.pairs.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    PairSelect p;
    p.i = r.u8();
    p.j = r.u8();
    if (p.i == p.j) raise(Err::Malformed, "challenge pair with equal indices");
    c.pairs.push_back(p);
  }
  r.expect_end();
  return c;
}

Bytes encode_response(const Response& r) {
  Bytes out;
  put_u16(out, uint16_t(r.bits.size()));
  append(out, pack_bits(r));
  return out;
}

Response decode_response(ByteSpan b) {
  ByteReader rd(b);
  size_t n = rd.u16();
  ByteSpan packed = rd.take((n + 7) / 8);
  rd.expect_end();
  Response r;
  r.bits.reserve(n);
  for (size_t k = 0; k < n; ++k)
    r.bits.push_back(uint8_t((packed[k / 8] >> (7 - k % 8)) & 1));
  return r;
}

}  // namespace rctee::puf
