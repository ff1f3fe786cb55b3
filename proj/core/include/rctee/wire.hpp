// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rctee/crypto.hpp"
#include "rctee/device.hpp"
#include "rctee/puf.hpp"

// Bit-exact message formats and framing. A frame is
//   length (u32, of type+payload) || type (u8) || payload
// with length capped at 64 MiB. Field encodings use 2-byte length prefixes
// for small fields and 8-byte prefixes for bulk payloads.
namespace rctee::wire {

inline constexpr size_t kMaxFrameLen = 64u << 20;  // type + payload

// Message type codes (wire-normative).
enum MsgType : uint8_t {
  kAttestRequest = 0x01,
  kAttestResponse = 0x02,
  kTtpVerifyRequest = 0x03,
  kTtpVerifyResponse = 0x04,
  kTtpReject = 0x05,
  kChallengeForward = 0x06,
  kChallengeAnswer = 0x07,
  kDeployData = 0x08,
  kDeployRequest = 0x09,
  kDeployAck = 0x0A,
  kInvokeRequest = 0x0B,
  kInvokeResponse = 0x0C,
  kError = 0x0D,
  // 0x20-0x2F: harness control and out-of-band enrollment.
  kCtrlPowerOn = 0x20,
  kCtrlPowerOff = 0x21,
  kCtrlInjectTamper = 0x22,
  kCtrlSetFirmware = 0x23,
  kCtrlStageQuery = 0x24,
  kCtrlStageReport = 0x25,
  kCtrlAck = 0x26,
  kEnrollUserRequest = 0x28,
  kEnrollUserResponse = 0x29,
  kLedgerRequest = 0x2A,
  kLedgerResponse = 0x2B,
};

struct AttestRequest {
  crypto::Certificate cert;
  bool operator==(const AttestRequest&) const = default;
};
struct AttestResponse {
  crypto::Signature delta{};
  Bytes epsilon;
  bool operator==(const AttestResponse&) const = default;
};
struct TtpVerifyRequest {
  crypto::Signature delta{};
  Bytes epsilon;
  bool operator==(const TtpVerifyRequest&) const = default;
};
struct TtpVerifyResponse {
  crypto::Certificate cert_dev;
  puf::Challenge challenge;
  crypto::Digest credential{};
  bool operator==(const TtpVerifyResponse&) const = default;
};
struct TtpReject {
  uint16_t reason = 0;
  bool operator==(const TtpReject&) const = default;
};
struct ChallengeForward {
  puf::Challenge challenge;
  bool operator==(const ChallengeForward&) const = default;
};
struct ChallengeAnswer {
  crypto::Digest digest{};
  bool operator==(const ChallengeAnswer&) const = default;
};
struct DeployData {
  Bytes enc_bin;
  bool operator==(const DeployData&) const = default;
};
struct DeployRequest {
  crypto::Signature sig{};
  bool operator==(const DeployRequest&) const = default;
};
struct DeployAck {
  uint16_t status = 0;  // 0 = deployed, else Err code
  bool operator==(const DeployAck&) const = default;
};
struct InvokeRequest {
  Bytes blob;  // sealed under SessKey
  bool operator==(const InvokeRequest&) const = default;
};
struct InvokeResponse {
  Bytes blob;  // sealed under SessKey
  bool operator==(const InvokeResponse&) const = default;
};
struct ErrorMsg {
  uint16_t code = 0;
  std::string detail;
  bool operator==(const ErrorMsg&) const = default;
};
struct CtrlPowerOn {
  bool operator==(const CtrlPowerOn&) const = default;
};
struct CtrlPowerOff {
  bool operator==(const CtrlPowerOff&) const = default;
};
struct CtrlInjectTamper {
  uint8_t partition_kind = 0;
  bool operator==(const CtrlInjectTamper&) const = default;
};
struct CtrlSetFirmware {
  uint8_t mode = 0;  // 0 = standard (PCAP open), 1 = custom (PCAP gated)
  bool operator==(const CtrlSetFirmware&) const = default;
};
struct CtrlStageQuery {
  bool operator==(const CtrlStageQuery&) const = default;
};
struct StageRecordWire {
  uint8_t stage = 0;
  uint8_t ocm_slot_nonzero = 0;
  uint8_t meas_location = 0;
  bool operator==(const StageRecordWire&) const = default;
};
struct CtrlStageReport {
  std::vector<StageRecordWire> records;
  bool operator==(const CtrlStageReport&) const = default;
};
struct CtrlAck {
  uint16_t status = 0;
  std::string detail;
  bool operator==(const CtrlAck&) const = default;
};
struct EnrollUserRequest {
  crypto::Key32 pk_user{};
  bool operator==(const EnrollUserRequest&) const = default;
};
struct EnrollUserResponse {
  Bytes uid;
  crypto::Certificate cert;
  crypto::Key32 pk_ttp{};
  bool operator==(const EnrollUserResponse&) const = default;
};
struct LedgerRequest {
  std::array<uint8_t, 16> di{};
  bool operator==(const LedgerRequest&) const = default;
};
struct LedgerResponse {
  uint32_t total = 0;
  uint32_t consumed = 0;
  bool operator==(const LedgerResponse&) const = default;
};

using Message = std::variant<AttestRequest, AttestResponse, TtpVerifyRequest, TtpVerifyResponse,
                             TtpReject, ChallengeForward, ChallengeAnswer, DeployData,
                             DeployRequest, DeployAck, InvokeRequest, InvokeResponse, ErrorMsg,
                             CtrlPowerOn, CtrlPowerOff, CtrlInjectTamper, CtrlSetFirmware,
                             CtrlStageQuery, CtrlStageReport, CtrlAck, EnrollUserRequest,
                             EnrollUserResponse, LedgerRequest, LedgerResponse>;

uint8_t type_of(const Message& m);

/// Serializes type byte + payload (the framed portion after the length).
Bytes encode_body(const Message& m);

/// Parses type byte + payload; rejects unknown types, truncation, and
/// trailing garbage. Never throws anything but Error{MALFORMED, OVERSIZE,
/// UNKNOWN_TYPE}.
Message decode_body(ByteSpan body);

/// Full frame: u32 length || body.
Bytes encode_frame(const Message& m);

Bytes encode_certificate(const crypto::Certificate& cert);
crypto::Certificate decode_certificate(ByteReader& r);

// Plaintext layouts sealed inside InvokeRequest / InvokeResponse blobs.
Bytes encode_invoke_plain(const std::array<uint8_t, 16>& ip_id, const dev::IpInvocation& inv);
std::pair<std::array<uint8_t, 16>, dev::IpInvocation> decode_invoke_plain(ByteSpan b);
Bytes encode_invoke_result(uint16_t status, const dev::OutputRecords& outputs,
                           const std::string& detail);
struct InvokeResult {
  uint16_t status = 0;
  dev::OutputRecords outputs;
  std::string detail;
};
InvokeResult decode_invoke_result(ByteSpan b);

}  // namespace rctee::wire
