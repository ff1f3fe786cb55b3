// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rctee/device.hpp"
#include "rctee/image.hpp"
#include "rctee/puf.hpp"
#include "rctee/sma.hpp"

// Trusted Third Party: device/user enrollment, golden-measurement
// verification of secure boot reports, and credential issuance.
namespace rctee::ttp {

inline constexpr size_t kCrpsPerDevice = 1024;

struct DeviceRecord {
  std::array<uint8_t, 16> di{};
  Bytes csp_id;
  Bytes board_version;
  crypto::SymmetricKey bbram_key;
  crypto::SignKeyPair ta_keys;  // SK_TA / PK_TA
  puf::CrpSet crps;
  img::MeasurementSet golden;
};

struct UserRecord {
  Bytes uid;
  crypto::Key32 pk_user{};
};

class Ttp {
 public:
  /// Fresh TTP identity keyed from `rng`.
  explicit Ttp(Rng& rng);

  struct EnrollDeviceOut {
    std::array<uint8_t, 16> di{};
    img::BootableImage image;
    dev::Provision provision;
    Bytes sma_artifact;
    crypto::Signature sma_sig{};
  };

  /// Phase 1: generates the device identity, keys and CRP database, builds
  /// the 7 boot partitions, and packages the device-specific image.
  EnrollDeviceOut enroll_device(ByteSpan csp_id, ByteSpan board_version, ByteSpan device_seed32);

  struct EnrollUserOut {
    Bytes uid;
    crypto::Certificate cert;
    crypto::Key32 pk_ttp{};
  };

  /// Phase 2: registers PK_USER and issues Ca(PK_USER).
  EnrollUserOut enroll_user(ByteSpan pk_user32);

  struct VerifyOut {
    crypto::Certificate cert_dev;
    puf::Challenge challenge;
    crypto::Digest credential{};
  };

  /// Fig. 5 steps 5-6: open epsilon, match alpha against the golden
  /// measurements, verify delta under PK_DEV, and issue Ca(PK_DEV) plus a
  /// one-shot authentication credential from a fresh CRP.
  VerifyOut verify_attestation(const crypto::Signature& delta, ByteSpan epsilon);

  /// (total, consumed) CRP counts for one device.
  std::pair<size_t, size_t> crp_ledger_status(const std::array<uint8_t, 16>& di) const;

  const crypto::Key32& pk_ttp() const { return keys_.pub; }
  /// Attaches the randomness source used by enrollment (required after load).
  void set_rng(Rng& rng) { rng_ = &rng; }
  const DeviceRecord* find_device(const std::array<uint8_t, 16>& di) const;
  size_t device_count() const { return devices_.size(); }
  size_t user_count() const { return users_.size(); }

  // Database snapshot ("RCTD"), written atomically.
  Bytes encode_db() const;
  static Ttp decode_db(ByteSpan bytes);
  void save(const std::string& path) const;
  static Ttp load(const std::string& path);

 private:
  Ttp() = default;

  crypto::SignKeyPair keys_;  // SK_TTP / PK_TTP
  uint64_t next_uid_ = 1;
  std::map<std::array<uint8_t, 16>, DeviceRecord> devices_;
  std::vector<UserRecord> users_;
  Rng* rng_ = nullptr;  // enrollment randomness; not persisted
};

}  // namespace rctee::ttp
