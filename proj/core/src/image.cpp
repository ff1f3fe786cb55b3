// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/image.hpp"

#include <algorithm>
#include <set>

namespace rctee::img {

const char* partition_name(PartitionKind k) {
  switch (k) {
    case PartitionKind::Fsbl: return "FSBL";
    case PartitionKind::PmuFw: return "PMU_FW";
    case PartitionKind::Bit: return "BIT";
    case PartitionKind::Atf: return "ATF";
    case PartitionKind::Tee: return "TEE";
    case PartitionKind::Uboot: return "UBOOT";
    case PartitionKind::Linux: return "LINUX";
  }
  return "?";
}

std::optional<PartitionKind> partition_from_name(const std::string& name) {
  for (PartitionKind k : kPartitionOrder)
    if (name == partition_name(k)) return k;
  return std::nullopt;
}

Bytes make_pmu_fw_payload(bool pcap_direct_access, ByteSpan body) {
  Bytes out;
  put_u8(out, pcap_direct_access ? 1 : 0);
  put_u64(out, body.size());
  append(out, body);
  return out;
}

std::pair<bool, Bytes> parse_pmu_fw_payload(ByteSpan payload) {
  ByteReader r(payload);
  bool flag = r.u8() != 0;
  size_t n = r.u64();
  ByteSpan body = r.take(n);
  r.expect_end();
  return {flag, Bytes(body.begin(), body.end())};
}

Bytes make_tee_payload(const crypto::Key32& pk_ta, ByteSpan body) {
  Bytes out(pk_ta.begin(), pk_ta.end());
  put_u64(out, body.size());
  append(out, body);
  return out;
}

std::pair<crypto::Key32, Bytes> parse_tee_payload(ByteSpan payload) {
  ByteReader r(payload);
  crypto::Key32 pk = r.arr<32>();
  size_t n = r.u64();
  ByteSpan body = r.take(n);
  r.expect_end();
  return {pk, Bytes(body.begin(), body.end())};
}

Bytes make_linux_payload(ByteSpan sma_artifact, const crypto::Signature& artifact_sig,
                         ByteSpan body) {
  Bytes out;
  put_u64(out, sma_artifact.size());
  append(out, sma_artifact);
  append(out, artifact_sig);
  put_u64(out, body.size());
  append(out, body);
  return out;
}

LinuxPayload parse_linux_payload(ByteSpan payload) {
  ByteReader r(payload);
  LinuxPayload out;
  size_t alen = r.u64();
  ByteSpan artifact = r.take(alen);
  out.sma_artifact.assign(artifact.begin(), artifact.end());
  out.artifact_sig = r.arr<64>();
  size_t blen = r.u64();
  ByteSpan body = r.take(blen);
  out.body.assign(body.begin(), body.end());
  r.expect_end();
  return out;
}

namespace {

uint8_t kind_byte(PartitionKind k) { return uint8_t(k); }

}  // namespace

BootableImage package(std::span<const Partition> partitions, const crypto::SymmetricKey& bbram_key,
                      Rng& nonce_source) {
  std::array<const Partition*, kPartitionCount> byKind{};
  for (const Partition& p : partitions) {
    auto& slot = byKind[size_t(p.kind)];
    if (slot) raise(Err::DuplicatePartition, partition_name(p.kind));
    slot = &p;
  }
  BootableImage image;
  image.partitions.reserve(kPartitionCount);
  for (PartitionKind k : kPartitionOrder) {
    const Partition* p = byKind[size_t(k)];
    if (!p) raise(Err::MissingPartition, partition_name(k));
    EncryptedPartition ep;
    ep.kind = k;
    nonce_source.fill(ep.nonce);
    uint8_t aad = kind_byte(k);
    ep.sealed = crypto::aead_seal(bbram_key, ep.nonce, {&aad, 1}, p->payload);
    image.partitions.push_back(std::move(ep));
  }
  return image;
}

std::pair<std::vector<Partition>, MeasurementSet> unpack_and_measure(
    const BootableImage& image, const crypto::SymmetricKey& bbram_key) {
  if (image.partitions.size() != kPartitionCount) raise(Err::Malformed, "partition count");
  std::vector<Partition> parts;
  MeasurementSet ms;
  parts.reserve(kPartitionCount);
  for (size_t idx = 0; idx < kPartitionCount; ++idx) {
    const EncryptedPartition& ep = image.partitions[idx];
    if (ep.kind != kPartitionOrder[idx]) raise(Err::Malformed, "partition order");
    uint8_t aad = kind_byte(ep.kind);
    Partition p;
    p.kind = ep.kind;
    p.payload = crypto::aead_open(bbram_key, ep.nonce, {&aad, 1}, ep.sealed);
    ms.digests[idx] = crypto::hash(p.payload);
    parts.push_back(std::move(p));
  }
  return {std::move(parts), ms};
}

MeasurementSet golden_measurements(std::span<const Partition> partitions) {
  std::array<const Partition*, kPartitionCount> byKind{};
  for (const Partition& p : partitions) {
    auto& slot = byKind[size_t(p.kind)];
    if (slot) raise(Err::DuplicatePartition, partition_name(p.kind));
    slot = &p;
  }
  MeasurementSet ms;
  for (size_t idx = 0; idx < kPartitionCount; ++idx) {
    const Partition* p = byKind[idx];
    if (!p) raise(Err::MissingPartition, partition_name(kPartitionOrder[idx]));
    ms.digests[idx] = crypto::hash(p->payload);
  }
  return ms;
}

Bytes h_boot(const MeasurementSet& ms) {
  Bytes out;
  out.reserve(kHBootLen);
  for (const auto& d : ms.digests) append(out, d);
  return out;
}

Bytes encode_image(const BootableImage& image) {
  Bytes out(kImageMagic, kImageMagic + 4);
  put_u16(out, image.version);
  for (const EncryptedPartition& ep : image.partitions) {
    put_u8(out, kind_byte(ep.kind));
    append(out, ep.nonce);
    put_u64(out, ep.sealed.size());
    append(out, ep.sealed);
  }
  return out;
}

BootableImage decode_image(ByteSpan bytes) {
  try {
    ByteReader r(bytes);
    auto magic = r.take(4);
    if (!std::equal(magic.begin(), magic.end(), kImageMagic)) raise(Err::MalformedImage, "magic");
    BootableImage image;
    image.version = r.u16();
    for (size_t idx = 0; idx < kPartitionCount; ++idx) {
      EncryptedPartition ep;
      uint8_t kind = r.u8();
      if (kind != uint8_t(kPartitionOrder[idx])) raise(Err::MalformedImage, "partition order");
      ep.kind = PartitionKind(kind);
      ep.nonce = r.arr<crypto::kNonceLen>();
      size_t len = r.u64();
      if (len < crypto::kTagLen || len > bytes.size()) raise(Err::MalformedImage, "record length");
      ByteSpan sealed = r.take(len);
      ep.sealed.assign(sealed.begin(), sealed.end());
      image.partitions.push_back(std::move(ep));
    }
    r.expect_end();
    return image;
  } catch (const Error& e) {
    if (e.code() == Err::Malformed) raise(Err::MalformedImage, e.what());
    throw;
  }
}

void validate_container(const BitstreamContainer& c) {
  if (c.ips.empty()) raise(Err::Malformed, "container must declare at least one IP");
  std::set<uint64_t> seen;
  auto check = [&](uint64_t addr, bool secure) {
    if (secure && !layout::in_secure_region(addr))
      raise(Err::AddrOutOfRegion, "secure IP address outside reserved region");
    if (!seen.insert(addr).second) raise(Err::AddrCollision, "address declared twice");
  };
  for (const IpDescriptor& ip : c.ips) {
    if (ip.kernel_name.empty() || ip.kernel_name.size() > 64)
      raise(Err::Malformed, "kernel name length");
    check(ip.status_addr, ip.secure);
    for (uint64_t a : ip.input_addrs) check(a, ip.secure);
    for (uint64_t a : ip.output_addrs) check(a, ip.secure);
  }
}

Bytes encode_bitstream(const BitstreamContainer& c) {
  validate_container(c);
  Bytes out(kBitstreamMagic, kBitstreamMagic + 4);
  put_u16(out, c.version);
  put_u16(out, uint16_t(c.ips.size()));
  for (const IpDescriptor& ip : c.ips) {
    append(out, ip.ip_id);
    put_u16(out, uint16_t(ip.kernel_name.size()));
    append(out, to_bytes(ip.kernel_name));
    put_u8(out, ip.secure ? 1 : 0);
    put_u64(out, ip.status_addr);
    put_u16(out, uint16_t(ip.input_addrs.size()));
    for (uint64_t a : ip.input_addrs) put_u64(out, a);
    put_u16(out, uint16_t(ip.output_addrs.size()));
    for (uint64_t a : ip.output_addrs) put_u64(out, a);
  }
  put_u64(out, c.filler.size());
  append(out, c.filler);
  return out;
}

Bytes encode_bitstream(const BitstreamContainer& manifest, size_t filler_len,
                       crypto::DrbgStream& filler_source) {
  BitstreamContainer c = manifest;
  c.filler = filler_source.bytes(filler_len);
  return encode_bitstream(c);
}

BitstreamContainer decode_bitstream(ByteSpan bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kBitstreamMagic)) raise(Err::Malformed, "magic");
  BitstreamContainer c;
  c.version = r.u16();
  size_t n = r.u16();
  if (n == 0) raise(Err::Malformed, "container must declare at least one IP");
  for (size_t k = 0; k < n; ++k) {
    IpDescriptor ip;
    ip.ip_id = r.arr<16>();
    size_t name_len = r.u16();
    if (name_len == 0 || name_len > 64) raise(Err::Malformed, "kernel name length");
    ip.kernel_name = to_string(r.take(name_len));
    ip.secure = r.u8() != 0;
    ip.status_addr = r.u64();
    size_t ni = r.u16();
    for (size_t x = 0; x < ni; ++x) ip.input_addrs.push_back(r.u64());
    size_t no = r.u16();
    for (size_t x = 0; x < no; ++x) ip.output_addrs.push_back(r.u64());
    c.ips.push_back(std::move(ip));
  }
  size_t filler_len = r.u64();
  ByteSpan filler = r.take(filler_len);
  c.filler.assign(filler.begin(), filler.end());
  r.expect_end();
  validate_container(c);
  return c;
}

}  // namespace rctee::img
