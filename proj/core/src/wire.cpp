// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/wire.hpp"

namespace rctee::wire {

namespace {

void put_var2(Bytes& out, ByteSpan b) {
  if (b.size() > 0xFFFF) raise(Err::Oversize, "var2 field");
  put_u16(out, uint16_t(b.size()));
  append(out, b);
}

void put_var8(Bytes& out, ByteSpan b) {
  put_u64(out, b.size());
  append(out, b);
}

Bytes get_var2(ByteReader& r) {
  size_t n = r.u16();
  ByteSpan b = r.take(n);
  return Bytes(b.begin(), b.end());
}

Bytes get_var8(ByteReader& r) {
  uint64_t n = r.u64();
  if (n > r.remaining()) raise(Err::Malformed, "var8 length");
  ByteSpan b = r.take(size_t(n));
  return Bytes(b.begin(), b.end());
}

}  // namespace

Bytes encode_certificate(const crypto::Certificate& cert) {
  Bytes out;
  put_var2(out, cert.subject_id);
  append(out, cert.subject_pub);
  append(out, cert.signature);
  return out;
}

crypto::Certificate decode_certificate(ByteReader& r) {
  crypto::Certificate cert;
  cert.subject_id = get_var2(r);
  cert.subject_pub = r.arr<32>();
  cert.signature = r.arr<64>();
  return cert;
}

uint8_t type_of(const Message& m) {
  struct Visitor {
    uint8_t operator()(const AttestRequest&) { return kAttestRequest; }
    uint8_t operator()(const AttestResponse&) { return kAttestResponse; }
    uint8_t operator()(const TtpVerifyRequest&) { return kTtpVerifyRequest; }
    uint8_t operator()(const TtpVerifyResponse&) { return kTtpVerifyResponse; }
    uint8_t operator()(const TtpReject&) { return kTtpReject; }
    uint8_t operator()(const ChallengeForward&) { return kChallengeForward; }
    uint8_t operator()(const ChallengeAnswer&) { return kChallengeAnswer; }
    uint8_t operator()(const DeployData&) { return kDeployData; }
    uint8_t operator()(const DeployRequest&) { return kDeployRequest; }
    uint8_t operator()(const DeployAck&) { return kDeployAck; }
    uint8_t operator()(const InvokeRequest&) { return kInvokeRequest; }
    uint8_t operator()(const InvokeResponse&) { return kInvokeResponse; }
    uint8_t operator()(const ErrorMsg&) { return kError; }
    uint8_t operator()(const CtrlPowerOn&) { return kCtrlPowerOn; }
    uint8_t operator()(const CtrlPowerOff&) { return kCtrlPowerOff; }
    uint8_t operator()(const CtrlInjectTamper&) { return kCtrlInjectTamper; }
    uint8_t operator()(const CtrlSetFirmware&) { return kCtrlSetFirmware; }
    uint8_t operator()(const CtrlStageQuery&) { return kCtrlStageQuery; }
    uint8_t operator()(const CtrlStageReport&) { return kCtrlStageReport; }
    uint8_t operator()(const CtrlAck&) { return kCtrlAck; }
    uint8_t operator()(const EnrollUserRequest&) { return kEnrollUserRequest; }
    uint8_t operator()(const EnrollUserResponse&) { return kEnrollUserResponse; }
    uint8_t operator()(const LedgerRequest&) { return kLedgerRequest; }
    uint8_t operator()(const LedgerResponse&) { return kLedgerResponse; }
  };
  return std::visit(Visitor{}, m);
}

Bytes encode_body(const Message& m) {
  Bytes out;
  out.push_back(type_of(m));
  struct Visitor {
    Bytes& out;
    void operator()(const AttestRequest& v) { append(out, encode_certificate(v.cert)); }
    void operator()(const AttestResponse& v) {
      append(out, v.delta);
      put_var2(out, v.epsilon);
    }
    void operator()(const TtpVerifyRequest& v) {
      append(out, v.delta);
      put_var2(out, v.epsilon);
    }
    void operator()(const TtpVerifyResponse& v) {
      append(out, encode_certificate(v.cert_dev));
      append(out, puf::encode_challenge(v.challenge));
      append(out, v.credential);
    }
    void operator()(const TtpReject& v) { put_u16(out, v.reason); }
    void operator()(const ChallengeForward& v) { append(out, puf::encode_challenge(v.challenge)); }
    void operator()(const ChallengeAnswer& v) { append(out, v.digest); }
    void operator()(const DeployData& v) { put_var8(out, v.enc_bin); }
    void operator()(const DeployRequest& v) { append(out, v.sig); }
    void operator()(const DeployAck& v) { put_u16(out, v.status); }
    void operator()(const InvokeRequest& v) { put_var8(out, v.blob); }
    void operator()(const InvokeResponse& v) { put_var8(out, v.blob); }
    void operator()(const ErrorMsg& v) {
      put_u16(out, v.code);
      put_var2(out, to_bytes(v.detail));
    }
    void operator()(const CtrlPowerOn&) {}
    void operator()(const CtrlPowerOff&) {}
    void operator()(const CtrlInjectTamper& v) { put_u8(out, v.partition_kind); }
    void operator()(const CtrlSetFirmware& v) { put_u8(out, v.mode); }
    void operator()(const CtrlStageQuery&) {}
    void operator()(const CtrlStageReport& v) {
      put_u16(out, uint16_t(v.records.size()));
      for (const auto& rec : v.records) {
        put_u8(out, rec.stage);
        put_u8(out, rec.ocm_slot_nonzero);
        put_u8(out, rec.meas_location);
      }
    }
    void operator()(const CtrlAck& v) {
      put_u16(out, v.status);
      put_var2(out, to_bytes(v.detail));
    }
    void operator()(const EnrollUserRequest& v) { append(out, v.pk_user); }
    void operator()(const EnrollUserResponse& v) {
      put_var2(out, v.uid);
      append(out, encode_certificate(v.cert));
      append(out, v.pk_ttp);
    }
    void operator()(const LedgerRequest& v) { append(out, v.di); }
    void operator()(const LedgerResponse& v) {
      put_u32(out, v.total);
      put_u32(out, v.consumed);
    }
  };
  std::visit(Visitor{out}, m);
  if (out.size() > kMaxFrameLen) raise(Err::Oversize, "frame body too large");
  return out;
}

namespace {

puf::Challenge get_challenge(ByteReader& r) {
  size_t n = r.u16();
  if (n == 0 || n > puf::kMaxChallengePairs) raise(Err::Malformed, "challenge pair count");
  puf::Challenge c;
  c.pairs.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    puf::PairSelect p;
    p.i = r.u8();
    p.j = r.u8();
    if (p.i == p.j) raise(Err::Malformed, "challenge pair with equal indices");
    c.pairs.push_back(p);
  }
  return c;
}

}  // namespace

Message decode_body(ByteSpan body) {
  if (body.empty()) raise(Err::Malformed, "empty frame body");
  if (body.size() > kMaxFrameLen) raise(Err::Oversize, "frame body too large");
  uint8_t type = body[0];
  ByteReader r(body.subspan(1));
  Message m;
  switch (type) {
    case kAttestRequest: m = AttestRequest{decode_certificate(r)}; break;
    case kAttestResponse: {
      AttestResponse v;
      v.delta = r.arr<64>();
      v.epsilon = get_var2(r);
      m = std::move(v);
      break;
    }
    case kTtpVerifyRequest: {
      TtpVerifyRequest v;
      v.delta = r.arr<64>();
      v.epsilon = get_var2(r);
      m = std::move(v);
      break;
    }
    case kTtpVerifyResponse: {
      TtpVerifyResponse v;
      v.cert_dev = decode_certificate(r);
      v.challenge = get_challenge(r);
      v.credential = r.arr<48>();
      m = std::move(v);
      break;
    }
    case kTtpReject: m = TtpReject{r.u16()}; break;
    case kChallengeForward: m = ChallengeForward{get_challenge(r)}; break;
    case kChallengeAnswer: m = ChallengeAnswer{r.arr<48>()}; break;
    case kDeployData: m = DeployData{get_var8(r)}; break;
    case kDeployRequest: m = DeployRequest{r.arr<64>()}; break;
    case kDeployAck: m = DeployAck{r.u16()}; break;
    case kInvokeRequest: m = InvokeRequest{get_var8(r)}; break;
    case kInvokeResponse: m = InvokeResponse{get_var8(r)}; break;
    case kError: {
      ErrorMsg v;
      v.code = r.u16();
      v.detail = to_string(get_var2(r));
      m = std::move(v);
      break;
    }
    case kCtrlPowerOn: m = CtrlPowerOn{}; break;
    case kCtrlPowerOff: m = CtrlPowerOff{}; break;
    case kCtrlInjectTamper: m = CtrlInjectTamper{r.u8()}; break;
    case kCtrlSetFirmware: m = CtrlSetFirmware{r.u8()}; break;
    case kCtrlStageQuery: m = CtrlStageQuery{}; break;
    case kCtrlStageReport: {
      CtrlStageReport v;
      size_t n = r.u16();
      for (size_t k = 0; k < n; ++k) {
        StageRecordWire rec;
        rec.stage = r.u8();
        rec.ocm_slot_nonzero = r.u8();
        rec.meas_location = r.u8();
        v.records.push_back(rec);
      }
      m = std::move(v);
      break;
    }
    case kCtrlAck: {
      CtrlAck v;
      v.status = r.u16();
      v.detail = to_string(get_var2(r));
      m = std::move(v);
      break;
    }
    case kEnrollUserRequest: m = EnrollUserRequest{r.arr<32>()}; break;
    case kEnrollUserResponse: {
      EnrollUserResponse v;
      v.uid = get_var2(r);
      v.cert = decode_certificate(r);
      v.pk_ttp = r.arr<32>();
      m = std::move(v);
      break;
    }
    case kLedgerRequest: m = LedgerRequest{r.arr<16>()}; break;
    case kLedgerResponse: {
      LedgerResponse v;
      v.total = r.u32();
      v.consumed = r.u32();
      m = std::move(v);
      break;
    }
    default: raise(Err::UnknownType, "type " + std::to_string(type));
  }
  r.expect_end();
  return m;
}

Bytes encode_frame(const Message& m) {
  Bytes body = encode_body(m);
  Bytes out;
  put_u32(out, uint32_t(body.size()));
  append(out, body);
  return out;
}

Bytes encode_invoke_plain(const std::array<uint8_t, 16>& ip_id, const dev::IpInvocation& inv) {
  Bytes out;
  append(out, ip_id);
  put_u16(out, uint16_t(inv.inputs.size()));
  for (const auto& [addr, data] : inv.inputs) {
    put_u64(out, addr);
    put_var2(out, data);
  }
  put_u64(out, inv.status_addr);
  put_u16(out, uint16_t(inv.output_addrs.size()));
  for (uint64_t a : inv.output_addrs) put_u64(out, a);
  return out;
}

std::pair<std::array<uint8_t, 16>, dev::IpInvocation> decode_invoke_plain(ByteSpan b) {
  ByteReader r(b);
  std::array<uint8_t, 16> ip_id = r.arr<16>();
  dev::IpInvocation inv;
  size_t ni = r.u16();
  for (size_t k = 0; k < ni; ++k) {
    uint64_t addr = r.u64();
    inv.inputs.emplace_back(addr, get_var2(r));
  }
  inv.status_addr = r.u64();
  size_t no = r.u16();
  for (size_t k = 0; k < no; ++k) inv.output_addrs.push_back(r.u64());
  r.expect_end();
  return {ip_id, inv};
}

Bytes encode_invoke_result(uint16_t status, const dev::OutputRecords& outputs,
                           const std::string& detail) {
  Bytes out;
  put_u16(out, status);
  if (status == 0) {
    put_u16(out, uint16_t(outputs.size()));
    for (const auto& [addr, data] : outputs) {
      put_u64(out, addr);
      put_var2(out, data);
    }
  } else {
    put_var2(out, to_bytes(detail));
  }
  return out;
}

InvokeResult decode_invoke_result(ByteSpan b) {
  ByteReader r(b);
  InvokeResult res;
  res.status = r.u16();
  if (res.status == 0) {
    size_t n = r.u16();
    for (size_t k = 0; k < n; ++k) {
      uint64_t addr = r.u64();
      res.outputs.emplace_back(addr, get_var2(r));
    }
  } else {
    res.detail = to_string(get_var2(r));
  }
  r.expect_end();
  return res;
}

}  // namespace rctee::wire
