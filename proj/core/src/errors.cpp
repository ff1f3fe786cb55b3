// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/errors.hpp"

namespace rctee {

const char* err_name(Err e) {
  switch (e) {
    case Err::Ok: return "OK";
    case Err::AuthFail: return "AUTH_FAIL";
    case Err::BadPoint: return "BAD_POINT";
    case Err::EmptySeed: return "EMPTY_SEED";
    case Err::BadParams: return "BAD_PARAMS";
    case Err::SameIndex: return "SAME_INDEX";
    case Err::MissingPartition: return "MISSING_PARTITION";
    case Err::DuplicatePartition: return "DUPLICATE_PARTITION";
    case Err::Malformed: return "MALFORMED";
    case Err::AddrOutOfRegion: return "ADDR_OUT_OF_REGION";
    case Err::AddrCollision: return "ADDR_COLLISION";
    case Err::BootAuthFail: return "BOOT_AUTH_FAIL";
    case Err::MalformedImage: return "MALFORMED_IMAGE";
    case Err::WorldViolation: return "WORLD_VIOLATION";
    case Err::NotRunning: return "NOT_RUNNING";
    case Err::PufNotPresent: return "PUF_NOT_PRESENT";
    case Err::PcapDisabled: return "PCAP_DISABLED";
    case Err::UnknownIp: return "UNKNOWN_IP";
    case Err::AddrMismatch: return "ADDR_MISMATCH";
    case Err::KernelFault: return "KERNEL_FAULT";
    case Err::ProtViolation: return "PROT_VIOLATION";
    case Err::TaAuthFail: return "TA_AUTH_FAIL";
    case Err::CertInvalid: return "CERT_INVALID";
    case Err::NotBooted: return "NOT_BOOTED";
    case Err::BadState: return "BAD_STATE";
    case Err::SigMismatch: return "SIG_MISMATCH";
    case Err::UnknownDevice: return "UNKNOWN_DEVICE";
    case Err::MeasurementMismatch: return "MEASUREMENT_MISMATCH";
    case Err::BadReport: return "BAD_REPORT";
    case Err::CrpExhausted: return "CRP_EXHAUSTED";
    case Err::DecryptFail: return "DECRYPT_FAIL";
    case Err::DuplicateDevice: return "DUPLICATE_DEVICE";
    case Err::BadKey: return "BAD_KEY";
    case Err::Oversize: return "OVERSIZE";
    case Err::UnknownType: return "UNKNOWN_TYPE";
    case Err::SmaUnavailable: return "SMA_UNAVAILABLE";
    case Err::SharedMemOverflow: return "SHARED_MEM_OVERFLOW";
    case Err::ManifestInvalid: return "MANIFEST_INVALID";
    case Err::TtpRejected: return "TTP_REJECTED";
    case Err::DeviceAuthFail: return "DEVICE_AUTH_FAIL";
    case Err::VerdictMismatch: return "VERDICT_MISMATCH";
    case Err::AddrUnmapped: return "ADDR_UNMAPPED";
    case Err::Network: return "NETWORK";
    case Err::Io: return "IO";
  }
  return "UNKNOWN_ERR";
}

}  // namespace rctee
