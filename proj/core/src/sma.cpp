// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/sma.hpp"

#include <algorithm>

namespace rctee::sma {

namespace {
constexpr char kArtifactMagic[4] = {'R', 'C', 'S', 'M'};
}

Bytes encode_sma_artifact(const SmaArtifact& a) {
  Bytes out(kArtifactMagic, kArtifactMagic + 4);
  put_u16(out, a.version);
  append(out, a.pk_ttp);
  return out;
}

SmaArtifact decode_sma_artifact(ByteSpan b) {
  ByteReader r(b);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kArtifactMagic)) raise(Err::Malformed, "magic");
  SmaArtifact a;
  a.version = r.u16();
  a.pk_ttp = r.arr<32>();
  r.expect_end();
  return a;
}

crypto::Nonce session_nonce(std::string_view label3, uint64_t counter) {
  crypto::Nonce n{};
  std::copy_n(label3.begin(), 3, n.begin());
  auto ctr = u64_be(counter);
  std::copy(ctr.begin(), ctr.end(), n.begin() + 3);
  n[11] = 0;
  return n;
}

Sma::Sma(dev::Soc& soc, const crypto::Key32& pk_ttp, Rng& rng)
    : soc_(soc), pk_ttp_(pk_ttp), rng_(rng) {}

Sma::AttestOut Sma::handle_attest_request(const crypto::Certificate& cert_user) {
  if (soc_.phase() != dev::Phase::Running) raise(Err::NotBooted, "device not running");

  trace_step("verify_cert");
  if (!crypto::verify_certificate(pk_ttp_, cert_user))
    raise(Err::CertInvalid, "user certificate does not verify under PK_TTP");

  // A new attestation discards any previous session state.
  state_ = SessionState::Idle;
  deploy_ctr_ = 0;
  invoke_ctr_ = 0;
  pk_user_ = cert_user.subject_pub;

  // Fresh keypair from a PUF-extracted seed: draw a pseudo-random 256-pair
  // challenge, query the hardware PUF, and hash the response down to a seed.
  trace_step("puf_seed");
  Bytes entropy = rng_.bytes(32);
  crypto::DrbgStream challenge_stream(entropy);
  puf::Challenge seed_challenge =
      puf::draw_challenge(challenge_stream, puf::kSeedChallengePairs, soc_.puf_model().osc_count);
  puf::Response seed_response =
      soc_.syscall_get_hw_puf_response(dev::World::Tos, seed_challenge, rng_);
  crypto::Key32 seed = puf::seed_from_response(seed_response);
  keys_ = crypto::sign_keygen(seed);

  trace_step("boot_hash");
  Bytes hboot = soc_.syscall_get_boot_hash(dev::World::Tos);
  Bytes alpha_input = hboot;
  append(alpha_input, soc_.di());
  crypto::Digest alpha = crypto::hash(alpha_input);

  AttestOut out;
  out.delta = crypto::sign(keys_.secret, alpha);

  trace_step("session_key");
  crypto::Key32 shared = crypto::identity_agree(keys_.secret, pk_user_);
  sess_key_ = crypto::kdf(shared, to_bytes(kSessionKdfLabel));

  // epsilon = PKE(PK_TTP, #DI || alpha || PK_DEV)
  Bytes eps_plain;
  append(eps_plain, soc_.di());
  append(eps_plain, alpha);
  append(eps_plain, keys_.pub);
  out.epsilon = crypto::pke_seal(crypto::ed_pub_to_x(pk_ttp_), eps_plain, rng_);

  state_ = SessionState::AwaitChallenge;
  return out;
}

crypto::Digest Sma::handle_challenge(const puf::Challenge& challenge) {
  if (state_ != SessionState::AwaitChallenge)
    raise(Err::BadState, "challenge outside attestation flow");
  puf::Response response = soc_.syscall_get_hw_puf_response(dev::World::Tos, challenge, rng_);
  Bytes input = puf::pack_bits(response);
  append(input, soc_.di());
  state_ = SessionState::Established;
  return crypto::hash(input);
}

void Sma::handle_deploy(ByteSpan enc_bin, const crypto::Signature& sig) {
  if (state_ != SessionState::Established) raise(Err::BadState, "no established session");
  uint64_t ctr = deploy_ctr_++;  // counts every attempt

  trace_step("verify_sig");
  crypto::Digest h = crypto::hash(enc_bin);
  if (!crypto::verify(pk_user_, h, sig))
    raise(Err::SigMismatch, "bitstream signature does not verify under PK_USER");

  trace_step("aead_open");
  crypto::Nonce nonce = session_nonce("DEP", ctr);
  Bytes plaintext = crypto::aead_open(sess_key_, nonce, to_bytes("deploy"), enc_bin);

  trace_step("program_user_hw");
  soc_.syscall_program_user_hw(dev::World::Tos, plaintext);
}

Bytes Sma::handle_invoke(ByteSpan enc_request) {
  if (state_ != SessionState::Established) raise(Err::BadState, "no established session");
  uint64_t ctr = invoke_ctr_++;  // counts every attempt
  auto seal_result = [&](const Bytes& plain) {
    return crypto::aead_seal(sess_key_, session_nonce("INR", ctr), to_bytes("invoke"), plain);
  };
  auto seal_error = [&](Err code, const std::string& detail) {
    return seal_result(wire::encode_invoke_result(uint16_t(code), {}, detail));
  };

  Bytes plain;
  try {
    trace_step("aead_open");
    plain = crypto::aead_open(sess_key_, session_nonce("INV", ctr), to_bytes("invoke"),
                              enc_request);
  } catch (const Error& e) {
    return seal_error(e.code(), "request rejected");
  }

  try {
    auto [ip_id, invocation] = wire::decode_invoke_plain(plain);
    trace_step("usr_def_ip");
    dev::OutputRecords outputs = soc_.syscall_usr_def_ip(dev::World::Tos, ip_id, invocation);
    return seal_result(wire::encode_invoke_result(0, outputs, ""));
  } catch (const Error& e) {
    return seal_error(e.code(), e.what());
  }
}

}  // namespace rctee::sma
