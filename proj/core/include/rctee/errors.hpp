// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rctee {

/// Stable error codes shared by every module and by the wire protocol's
/// Error / TtpReject / DeployAck status fields. Values are part of the
/// wire format; never renumber.
enum class Err : uint16_t {
  Ok = 0,
  AuthFail = 1,
  BadPoint = 2,
  EmptySeed = 3,
  BadParams = 4,
  SameIndex = 5,
  MissingPartition = 6,
  DuplicatePartition = 7,
  Malformed = 8,
  AddrOutOfRegion = 9,
  AddrCollision = 10,
  BootAuthFail = 11,
  MalformedImage = 12,
  WorldViolation = 13,
  NotRunning = 14,
  PufNotPresent = 15,
  PcapDisabled = 16,
  UnknownIp = 17,
  AddrMismatch = 18,
  KernelFault = 19,
  ProtViolation = 20,
  TaAuthFail = 21,
  CertInvalid = 22,
  NotBooted = 23,
  BadState = 24,
  SigMismatch = 25,
  UnknownDevice = 26,
  MeasurementMismatch = 27,
  BadReport = 28,
  CrpExhausted = 29,
  DecryptFail = 30,
  DuplicateDevice = 31,
  BadKey = 32,
  Oversize = 33,
  UnknownType = 34,
  SmaUnavailable = 35,
  SharedMemOverflow = 36,
  ManifestInvalid = 37,
  TtpRejected = 38,
  DeviceAuthFail = 39,
  VerdictMismatch = 40,
  AddrUnmapped = 41,
  Network = 42,
  Io = 43,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) +
                           (what.empty() ? "" : ": " + what)),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& what = "") {
  throw Error(code, what);
}

}  // namespace rctee
