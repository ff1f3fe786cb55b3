// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "rctee/bytes.hpp"
#include "rctee/rng.hpp"

// Fixed cryptographic suite shared by every party in the system:
// SHA3-384, AES-256-GCM, X25519, Ed25519 (deterministic signatures).
// All other modules use only these abstractions.
namespace rctee::crypto {

inline constexpr size_t kDigestLen = 48;
inline constexpr size_t kKeyLen = 32;
inline constexpr size_t kNonceLen = 12;
inline constexpr size_t kTagLen = 16;
inline constexpr size_t kSigLen = 64;
inline constexpr size_t kPointLen = 32;

using Digest = std::array<uint8_t, kDigestLen>;
using Signature = std::array<uint8_t, kSigLen>;
using Key32 = std::array<uint8_t, kKeyLen>;
using Nonce = std::array<uint8_t, kNonceLen>;

struct SymmetricKey {
  Key32 key{};
  Bytes label;  // context label, not part of the keying material

  bool operator==(const SymmetricKey&) const = default;
};

/// Ed25519 keypair; `secret` is the 32-byte seed, `pub` the point encoding.
struct SignKeyPair {
  Key32 secret{};
  Key32 pub{};
};

/// X25519 keypair; `pub` is deterministically derivable from `secret`.
struct DhKeyPair {
  Key32 secret{};
  Key32 pub{};
};

/// Binds a subject id to a subject public key under an issuer signature
/// over (subject id || subject public key).
struct Certificate {
  Bytes subject_id;
  Key32 subject_pub{};
  Signature signature{};

  bool operator==(const Certificate&) const = default;
};

/// SHA3-384 of `data`.
Digest hash(ByteSpan data);

/// AES-256-GCM. Returns ciphertext || 16-byte tag.
Bytes aead_seal(const SymmetricKey& key, ByteSpan nonce, ByteSpan aad, ByteSpan plaintext);

/// Inverse of aead_seal; throws AUTH_FAIL when the tag does not verify.
Bytes aead_open(const SymmetricKey& key, ByteSpan nonce, ByteSpan aad, ByteSpan sealed);

SignKeyPair sign_keygen(ByteSpan seed32);
Signature sign(ByteSpan secret32, ByteSpan message);
bool verify(ByteSpan pub32, ByteSpan message, ByteSpan sig);

DhKeyPair dh_keygen(ByteSpan seed32);
/// X25519 scalar multiplication; throws BAD_POINT on an invalid peer encoding
/// (including small-order points yielding an all-zero shared secret).
Key32 dh_agree(ByteSpan secret32, ByteSpan peer_pub32);

/// Deterministic key derivation: first 32 bytes of hash(label || shared).
SymmetricKey kdf(ByteSpan shared32, ByteSpan label);

/// Deterministic byte stream: block i is hash(seed || be64(i)), i from 0.
class DrbgStream {
 public:
  explicit DrbgStream(ByteSpan seed);  // throws EMPTY_SEED
  void fill(std::span<uint8_t> out);
  Bytes bytes(size_t n);
  uint8_t u8();
  uint64_t u64();

 private:
  Bytes seed_;
  Digest block_{};
  uint64_t counter_ = 0;
  size_t offset_ = kDigestLen;  // forces first refill
};

/// First `n` bytes of the drbg stream for `seed`.
Bytes drbg(ByteSpan seed, size_t n);

// Hybrid public-key encryption over X25519 + AES-256-GCM:
//   envelope = ephemeral_pub(32) || aead_seal(kdf(dh, "RCTEE-PKE-V1"), zero nonce, "", pt)
// The ephemeral keypair is fresh per call, so sealing is randomized.
Bytes pke_seal(ByteSpan recipient_pub32, ByteSpan plaintext, Rng& rng);
Bytes pke_open(ByteSpan recipient_secret32, ByteSpan envelope);

// Birational bridge between the Ed25519 identity keys used in certificates
// and signatures and the X25519 keys used for session agreement. The same
// 32-byte identity seed serves both roles, mirroring the protocol's dual use
// of PK_USER / PK_DEV for signature verification and key exchange.
Key32 ed_pub_to_x(ByteSpan ed_pub32);     // u = (1+y)/(1-y) mod 2^255-19; throws BAD_POINT
Key32 ed_secret_to_x(ByteSpan seed32);    // SHA-512(seed)[0..31]

/// X25519 agreement between two Ed25519 identities.
Key32 identity_agree(ByteSpan my_seed32, ByteSpan peer_ed_pub32);

Certificate make_certificate(ByteSpan issuer_secret32, ByteSpan subject_id, ByteSpan subject_pub32);
bool verify_certificate(ByteSpan issuer_pub32, const Certificate& cert);

}  // namespace rctee::crypto
