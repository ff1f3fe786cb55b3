// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rctee/crypto.hpp"
#include "rctee/layout.hpp"
#include "rctee/rng.hpp"

// Bootable-image packaging, the bitstream container format, and boot
// measurement computation. File formats "RCBI" and "RCTB" are normative
// and bit-exact; all integers big-endian.
namespace rctee::img {

enum class PartitionKind : uint8_t {
  Fsbl = 0,
  PmuFw = 1,
  Bit = 2,
  Atf = 3,
  Tee = 4,
  Uboot = 5,
  Linux = 6,
};
inline constexpr size_t kPartitionCount = 7;
inline constexpr std::array<PartitionKind, kPartitionCount> kPartitionOrder = {
    PartitionKind::Fsbl, PartitionKind::PmuFw, PartitionKind::Bit,  PartitionKind::Atf,
    PartitionKind::Tee,  PartitionKind::Uboot, PartitionKind::Linux};

const char* partition_name(PartitionKind k);
std::optional<PartitionKind> partition_from_name(const std::string& name);

struct Partition {
  PartitionKind kind;
  Bytes payload;  // serialized form; structured for PMU_FW / TEE / LINUX
};

// Structured payload codecs for the three partitions the device inspects.
Bytes make_pmu_fw_payload(bool pcap_direct_access, ByteSpan body);
std::pair<bool, Bytes> parse_pmu_fw_payload(ByteSpan payload);
Bytes make_tee_payload(const crypto::Key32& pk_ta, ByteSpan body);
std::pair<crypto::Key32, Bytes> parse_tee_payload(ByteSpan payload);
Bytes make_linux_payload(ByteSpan sma_artifact, const crypto::Signature& artifact_sig,
                         ByteSpan body);
struct LinuxPayload {
  Bytes sma_artifact;
  crypto::Signature artifact_sig;
  Bytes body;
};
LinuxPayload parse_linux_payload(ByteSpan payload);

struct EncryptedPartition {
  PartitionKind kind;
  crypto::Nonce nonce{};
  Bytes sealed;  // ciphertext || 16-byte tag, aad = kind byte
};

/// "RCBI" encrypted boot image: 7 partitions, canonical order.
struct BootableImage {
  uint16_t version = 1;
  std::vector<EncryptedPartition> partitions;
};

inline constexpr char kImageMagic[4] = {'R', 'C', 'B', 'I'};
inline constexpr char kBitstreamMagic[4] = {'R', 'C', 'T', 'B'};

BootableImage package(std::span<const Partition> partitions, const crypto::SymmetricKey& bbram_key,
                      Rng& nonce_source);

struct MeasurementSet {
  std::array<crypto::Digest, kPartitionCount> digests{};  // canonical order
  bool operator==(const MeasurementSet&) const = default;
};

std::pair<std::vector<Partition>, MeasurementSet> unpack_and_measure(
    const BootableImage& image, const crypto::SymmetricKey& bbram_key);

MeasurementSet golden_measurements(std::span<const Partition> partitions);

/// Concatenation of the 7 digests in canonical order; 336 bytes.
Bytes h_boot(const MeasurementSet& ms);
inline constexpr size_t kHBootLen = kPartitionCount * crypto::kDigestLen;

Bytes encode_image(const BootableImage& image);
BootableImage decode_image(ByteSpan bytes);  // MALFORMED_IMAGE on structural errors

/// One IP core advertised by a bitstream container.
struct IpDescriptor {
  std::array<uint8_t, 16> ip_id{};
  std::string kernel_name;
  bool secure = false;
  uint64_t status_addr = 0;
  std::vector<uint64_t> input_addrs;
  std::vector<uint64_t> output_addrs;
  bool operator==(const IpDescriptor&) const = default;
};

/// "RCTB" bitstream container: IP manifest plus opaque configuration filler.
struct BitstreamContainer {
  uint16_t version = 1;
  std::vector<IpDescriptor> ips;
  Bytes filler;
  bool operator==(const BitstreamContainer&) const = default;
};

/// Container invariants: >=1 IP, secure-IP addresses inside the reserved
/// secure region, all addresses pairwise distinct.
void validate_container(const BitstreamContainer& c);

Bytes encode_bitstream(const BitstreamContainer& manifest, size_t filler_len,
                       crypto::DrbgStream& filler_source);
Bytes encode_bitstream(const BitstreamContainer& c);
BitstreamContainer decode_bitstream(ByteSpan bytes);

}  // namespace rctee::img
