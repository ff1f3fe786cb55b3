// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>
#include <memory>

namespace rctee::crypto {

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct CtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, CtxDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

[[noreturn]] void backend_fail(const char* op) {
  raise(Err::Io, std::string("crypto backend: ") + op);
}

PkeyPtr raw_private(int type, ByteSpan secret) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(type, nullptr, secret.data(), secret.size()));
  if (!key) backend_fail("raw private key");
  return key;
}

Key32 raw_public_of(EVP_PKEY* key) {
  Key32 out;
  size_t len = out.size();
  if (EVP_PKEY_get_raw_public_key(key, out.data(), &len) != 1 || len != out.size())
    backend_fail("raw public key");
  return out;
}

}  // namespace

Digest hash(ByteSpan data) {
  Digest out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha3_384(), nullptr) != 1 ||
      len != kDigestLen)
    backend_fail("sha3-384");
  return out;
}

Bytes aead_seal(const SymmetricKey& key, ByteSpan nonce, ByteSpan aad, ByteSpan plaintext) {
  if (nonce.size() != kNonceLen) raise(Err::BadParams, "nonce must be 12 bytes");
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) backend_fail("cipher ctx");
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.key.data(), nonce.data()) != 1)
    backend_fail("gcm init");
  int outl = 0;
  if (!aad.empty() &&
      EVP_EncryptUpdate(ctx.get(), nullptr, &outl, aad.data(), int(aad.size())) != 1)
    backend_fail("gcm aad");
  Bytes out(plaintext.size() + kTagLen);
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &outl, plaintext.data(), int(plaintext.size())) != 1)
    backend_fail("gcm encrypt");
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + plaintext.size(), &fin) != 1)
    backend_fail("gcm final");
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagLen,
                          out.data() + plaintext.size()) != 1)
    backend_fail("gcm tag");
  return out;
}

Bytes aead_open(const SymmetricKey& key, ByteSpan nonce, ByteSpan aad, ByteSpan sealed) {
  if (nonce.size() != kNonceLen) raise(Err::BadParams, "nonce must be 12 bytes");
  if (sealed.size() < kTagLen) raise(Err::AuthFail, "sealed text shorter than tag");
  size_t ct_len = sealed.size() - kTagLen;
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) backend_fail("cipher ctx");
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.key.data(), nonce.data()) != 1)
    backend_fail("gcm init");
  int outl = 0;
  if (!aad.empty() &&
      EVP_DecryptUpdate(ctx.get(), nullptr, &outl, aad.data(), int(aad.size())) != 1)
    backend_fail("gcm aad");
  Bytes out(ct_len);
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &outl, sealed.data(), int(ct_len)) != 1)
    backend_fail("gcm decrypt");
  Bytes tag(sealed.begin() + long(ct_len), sealed.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data()) != 1)
    backend_fail("gcm set tag");
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + ct_len, &fin) != 1)
    raise(Err::AuthFail, "aead tag mismatch");
  return out;
}

SignKeyPair sign_keygen(ByteSpan seed32) {
  if (seed32.size() != kKeyLen) raise(Err::BadParams, "seed must be 32 bytes");
  PkeyPtr key = raw_private(EVP_PKEY_ED25519, seed32);
  SignKeyPair pair;
  std::memcpy(pair.secret.data(), seed32.data(), kKeyLen);
  pair.pub = raw_public_of(key.get());
  return pair;
}

Signature sign(ByteSpan secret32, ByteSpan message) {
  PkeyPtr key = raw_private(EVP_PKEY_ED25519, secret32);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx) backend_fail("md ctx");
  if (EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
    backend_fail("sign init");
  Signature sig;
  size_t len = sig.size();
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1 ||
      len != sig.size())
    backend_fail("sign");
  return sig;
}

bool verify(ByteSpan pub32, ByteSpan message, ByteSpan sig) {
  if (pub32.size() != kPointLen || sig.size() != kSigLen) return false;
  PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pub32.data(), pub32.size()));
  if (!key) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx) return false;
  if (EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) return false;
  return EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), message.data(), message.size()) == 1;
}

DhKeyPair dh_keygen(ByteSpan seed32) {
  if (seed32.size() != kKeyLen) raise(Err::BadParams, "seed must be 32 bytes");
  PkeyPtr key = raw_private(EVP_PKEY_X25519, seed32);
  DhKeyPair pair;
  std::memcpy(pair.secret.data(), seed32.data(), kKeyLen);
  pair.pub = raw_public_of(key.get());
  return pair;
}

Key32 dh_agree(ByteSpan secret32, ByteSpan peer_pub32) {
  if (secret32.size() != kKeyLen) raise(Err::BadParams, "secret must be 32 bytes");
  if (peer_pub32.size() != kPointLen) raise(Err::BadPoint, "peer key must be 32 bytes");
  PkeyPtr mine = raw_private(EVP_PKEY_X25519, secret32);
  PkeyPtr peer(
      EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer_pub32.data(), peer_pub32.size()));
  if (!peer) raise(Err::BadPoint, "invalid peer encoding");
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(mine.get(), nullptr));
  if (!ctx) backend_fail("derive ctx");
  Key32 shared;
  size_t len = shared.size();
  if (EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1 ||
      EVP_PKEY_derive(ctx.get(), shared.data(), &len) != 1 || len != shared.size())
    raise(Err::BadPoint, "x25519 derive failed");
  return shared;
}

SymmetricKey kdf(ByteSpan shared32, ByteSpan label) {
  Bytes input(label.begin(), label.end());
  append(input, shared32);
  Digest d = hash(input);
  SymmetricKey out;
  std::memcpy(out.key.data(), d.data(), kKeyLen);
  out.label.assign(label.begin(), label.end());
  return out;
}

DrbgStream::DrbgStream(ByteSpan seed) : seed_(seed.begin(), seed.end()) {
  if (seed_.empty()) raise(Err::EmptySeed, "drbg seed must be non-empty");
}

void DrbgStream::fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (offset_ == kDigestLen) {
      Bytes input = seed_;
      auto ctr = u64_be(counter_++);
      append(input, ctr);
      block_ = hash(input);
      offset_ = 0;
    }
    size_t n = std::min(out.size() - done, kDigestLen - offset_);
    std::memcpy(out.data() + done, block_.data() + offset_, n);
    offset_ += n;
    done += n;
  }
}

Bytes DrbgStream::bytes(size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

uint8_t DrbgStream::u8() {
  uint8_t b;
  fill({&b, 1});
  return b;
}

uint64_t DrbgStream::u64() {
  uint8_t b[8];
  fill(b);
  uint64_t v = 0;
  for (uint8_t x : b) v = v << 8 | x;
  return v;
}

Bytes drbg(ByteSpan seed, size_t n) {
  DrbgStream stream(seed);
  return stream.bytes(n);
}

Bytes pke_seal(ByteSpan recipient_pub32, ByteSpan plaintext, Rng& rng) {
  Key32 eph_seed;
  rng.fill(eph_seed);
  DhKeyPair eph = dh_keygen(eph_seed);
  Key32 shared = dh_agree(eph.secret, recipient_pub32);
  SymmetricKey k = kdf(shared, to_bytes("RCTEE-PKE-V1"));
  Nonce zero{};
  Bytes out(eph.pub.begin(), eph.pub.end());
  append(out, aead_seal(k, zero, {}, plaintext));
  return out;
}

Bytes pke_open(ByteSpan recipient_secret32, ByteSpan envelope) {
  if (envelope.size() < kPointLen + kTagLen) raise(Err::AuthFail, "envelope too short");
  ByteSpan eph_pub = envelope.subspan(0, kPointLen);
  Key32 shared = dh_agree(recipient_secret32, eph_pub);
  SymmetricKey k = kdf(shared, to_bytes("RCTEE-PKE-V1"));
  Nonce zero{};
  return aead_open(k, zero, {}, envelope.subspan(kPointLen));
}

namespace {

struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_free(p); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;

BnPtr curve25519_p() {
  // 2^255 - 19
  BnPtr p(BN_new());
  BN_one(p.get());
  BN_lshift(p.get(), p.get(), 255);
  BN_sub_word(p.get(), 19);
  return p;
}

}  // namespace

Key32 ed_pub_to_x(ByteSpan ed_pub32) {
  if (ed_pub32.size() != kPointLen) raise(Err::BadPoint, "ed public must be 32 bytes");
  // Decode y (little-endian, top bit is the x sign) and map to Montgomery
  // u = (1+y)/(1-y) mod 2^255-19.
  uint8_t y_le[32];
  std::memcpy(y_le, ed_pub32.data(), 32);
  y_le[31] &= 0x7f;
  BnPtr y(BN_lebin2bn(y_le, 32, nullptr));
  BnPtr p = curve25519_p();
  BnCtxPtr ctx(BN_CTX_new());
  if (!y || !p || !ctx) backend_fail("bn alloc");
  if (BN_cmp(y.get(), p.get()) >= 0) raise(Err::BadPoint, "y out of field");
  BnPtr one(BN_new());
  BN_one(one.get());
  BnPtr num(BN_new()), den(BN_new()), u(BN_new());
  BN_mod_add(num.get(), one.get(), y.get(), p.get(), ctx.get());
  BN_mod_sub(den.get(), one.get(), y.get(), p.get(), ctx.get());
  if (BN_is_zero(den.get())) raise(Err::BadPoint, "y == 1 has no Montgomery image");
  if (!BN_mod_inverse(den.get(), den.get(), p.get(), ctx.get()))
    raise(Err::BadPoint, "no inverse");
  BN_mod_mul(u.get(), num.get(), den.get(), p.get(), ctx.get());
  Key32 out{};
  if (BN_bn2lebinpad(u.get(), out.data(), 32) != 32) backend_fail("bn export");
  return out;
}

Key32 ed_secret_to_x(ByteSpan seed32) {
  if (seed32.size() != kKeyLen) raise(Err::BadParams, "seed must be 32 bytes");
  // The X25519 scalar of an Ed25519 identity is the first half of
  // SHA-512(seed); clamping happens inside X25519 itself.
  uint8_t full[64];
  unsigned int len = 0;
  if (EVP_Digest(seed32.data(), seed32.size(), full, &len, EVP_sha512(), nullptr) != 1 ||
      len != 64)
    backend_fail("sha512");
  Key32 out;
  std::memcpy(out.data(), full, 32);
  return out;
}

Key32 identity_agree(ByteSpan my_seed32, ByteSpan peer_ed_pub32) {
  Key32 sk = ed_secret_to_x(my_seed32);
  Key32 peer = ed_pub_to_x(peer_ed_pub32);
  return dh_agree(sk, peer);
}

Certificate make_certificate(ByteSpan issuer_secret32, ByteSpan subject_id,
                             ByteSpan subject_pub32) {
  Certificate cert;
  cert.subject_id.assign(subject_id.begin(), subject_id.end());
  cert.subject_pub = to_array<kPointLen>(subject_pub32);
  Bytes msg(subject_id.begin(), subject_id.end());
  append(msg, subject_pub32);
  cert.signature = sign(issuer_secret32, msg);
  return cert;
}

bool verify_certificate(ByteSpan issuer_pub32, const Certificate& cert) {
  Bytes msg = cert.subject_id;
  append(msg, cert.subject_pub);
  return verify(issuer_pub32, msg, cert.signature);
}

}  // namespace rctee::crypto
