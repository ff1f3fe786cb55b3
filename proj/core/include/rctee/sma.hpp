// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>

#include "rctee/device.hpp"
#include "rctee/wire.hpp"

// Secure Management Application: the trusted application running in the
// TOS. Attestation responder, IP deployment with signature-before-decrypt
// checking, and sealed IP invocation.
namespace rctee::sma {

enum class SessionState : uint8_t { Idle = 0, AwaitChallenge = 1, Established = 2 };

inline constexpr std::string_view kSessionKdfLabel = "RCTEE-SESSION-V1";

/// Signed SMA artifact carried in the LINUX partition. The artifact embeds
/// PK_TTP, the trust anchor for user certificates.
struct SmaArtifact {
  uint16_t version = 1;
  crypto::Key32 pk_ttp{};
};
Bytes encode_sma_artifact(const SmaArtifact& a);
SmaArtifact decode_sma_artifact(ByteSpan b);

/// Session nonces are label(3) || counter(u64 be) || 0x00.
crypto::Nonce session_nonce(std::string_view label3, uint64_t counter);

class Sma {
 public:
  /// Binds the TA to its device. The caller must have authenticated the
  /// artifact via Soc::start_ta first; `pk_ttp` comes from that artifact.
  Sma(dev::Soc& soc, const crypto::Key32& pk_ttp, Rng& rng);

  struct AttestOut {
    crypto::Signature delta{};
    Bytes epsilon;
  };

  /// Fig. 5 step 2: verify the user certificate, derive a fresh attestation
  /// keypair from a PUF-extracted seed, read H_BOOT, and produce the secure
  /// boot report and the TTP-sealed envelope. Resets any previous session.
  AttestOut handle_attest_request(const crypto::Certificate& cert_user);

  /// Fig. 5 step 9: answer the session challenge with H(R(C) || #DI).
  crypto::Digest handle_challenge(const puf::Challenge& challenge);

  /// Fig. 5 step 13: verify the user signature over H(Enc{Bin}) before any
  /// decryption, then decrypt and program the PL.
  void handle_deploy(ByteSpan enc_bin, const crypto::Signature& sig);

  /// Fig. 5 step 14: decrypt the sealed request, run the IP, and seal the
  /// result. Semantic failures come back as sealed error payloads.
  Bytes handle_invoke(ByteSpan enc_request);

  SessionState state() const { return state_; }
  const crypto::Key32& session_pub() const { return keys_.pub; }
  const crypto::SymmetricKey& session_key() const { return sess_key_; }
  uint64_t deploy_counter() const { return deploy_ctr_; }
  uint64_t invoke_counter() const { return invoke_ctr_; }

  /// Test hook: receives the name of each security-relevant step in call
  /// order ("verify_cert", "verify_sig", "aead_open", ...).
  std::function<void(std::string_view)> trace;

 private:
  void trace_step(std::string_view s) {
    if (trace) trace(s);
  }

  dev::Soc& soc_;
  crypto::Key32 pk_ttp_{};
  Rng& rng_;

  SessionState state_ = SessionState::Idle;
  crypto::SignKeyPair keys_{};  // fresh per session (SK_DEV, PK_DEV)
  crypto::SymmetricKey sess_key_{};
  crypto::Key32 pk_user_{};
  uint64_t deploy_ctr_ = 0;
  uint64_t invoke_ctr_ = 0;
};

}  // namespace rctee::sma
