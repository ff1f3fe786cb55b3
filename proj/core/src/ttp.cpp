// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/ttp.hpp"

#include <algorithm>
#include <cstdio>

#include "rctee/config.hpp"

namespace rctee::ttp {

namespace {

constexpr char kDbMagic[4] = {'R', 'C', 'T', 'D'};
constexpr uint16_t kDbVersion = 1;

std::array<uint8_t, 16> derive_di(ByteSpan device_seed) {
  Bytes input = to_bytes("RCTEE-DI");
  append(input, device_seed);
  crypto::Digest d = crypto::hash(input);
  std::array<uint8_t, 16> di;
  std::copy_n(d.begin(), di.size(), di.begin());
  return di;
}

void put_var2(Bytes& out, ByteSpan b) {
  put_u16(out, uint16_t(b.size()));
  append(out, b);
}

Bytes get_var2(ByteReader& r) {
  size_t n = r.u16();
  ByteSpan b = r.take(n);
  return Bytes(b.begin(), b.end());
}

}  // namespace

Ttp::Ttp(Rng& rng) : rng_(&rng) {
  crypto::Key32 seed;
  rng.fill(seed);
  keys_ = crypto::sign_keygen(seed);
}

Ttp::EnrollDeviceOut Ttp::enroll_device(ByteSpan csp_id, ByteSpan board_version,
                                        ByteSpan device_seed32) {
  if (!rng_) raise(Err::BadState, "no randomness source attached");
  if (device_seed32.size() != 32) raise(Err::BadParams, "device seed must be 32 bytes");

  DeviceRecord rec;
  rec.di = derive_di(device_seed32);
  if (devices_.count(rec.di)) raise(Err::DuplicateDevice, hex_encode(rec.di));
  rec.csp_id.assign(csp_id.begin(), csp_id.end());
  rec.board_version.assign(board_version.begin(), board_version.end());

  rng_->fill(rec.bbram_key.key);
  rec.bbram_key.label = to_bytes("BBRAM");
  crypto::Key32 ta_seed;
  rng_->fill(ta_seed);
  rec.ta_keys = crypto::sign_keygen(ta_seed);

  puf::RoPufModel model = puf::instantiate(device_seed32);
  Bytes challenge_seed = to_bytes("RCTEE-CRP-CHALLENGES");
  append(challenge_seed, device_seed32);
  crypto::DrbgStream challenge_source(challenge_seed);
  rec.crps = puf::enroll_crps(model, kCrpsPerDevice, challenge_source, *rng_);

  sma::SmaArtifact artifact{1, keys_.pub};
  Bytes artifact_bytes = sma::encode_sma_artifact(artifact);
  crypto::Signature artifact_sig = crypto::sign(rec.ta_keys.secret, artifact_bytes);

  // Initial PL design: the secure PUF IP only.
  img::BitstreamContainer initial;
  img::IpDescriptor puf_ip;
  puf_ip.ip_id = dev::kPufIpId;
  puf_ip.kernel_name = "puf";
  puf_ip.secure = true;
  puf_ip.status_addr = layout::kSecureBase;
  puf_ip.input_addrs = {layout::kSecureBase + 0x40};
  puf_ip.output_addrs = {layout::kSecureBase + 0x80};
  initial.ips.push_back(puf_ip);
  Bytes bit_seed = to_bytes("RCTEE-INITIAL-BIT");
  append(bit_seed, device_seed32);
  crypto::DrbgStream bit_filler(bit_seed);
  Bytes initial_bit = img::encode_bitstream(initial, 1024, bit_filler);

  std::vector<img::Partition> partitions = {
      {img::PartitionKind::Fsbl, to_bytes("RCTEE custom FSBL 1.0")},
      {img::PartitionKind::PmuFw, img::make_pmu_fw_payload(false, to_bytes("RCTEE custom PMU_FW"))},
      {img::PartitionKind::Bit, initial_bit},
      {img::PartitionKind::Atf, to_bytes("RCTEE ATF bl31")},
      {img::PartitionKind::Tee, img::make_tee_payload(rec.ta_keys.pub, to_bytes("RCTEE TOS"))},
      {img::PartitionKind::Uboot, to_bytes("RCTEE u-boot")},
      {img::PartitionKind::Linux,
       img::make_linux_payload(artifact_bytes, artifact_sig, to_bytes("RCTEE linux rootfs"))},
  };

  EnrollDeviceOut out;
  out.di = rec.di;
  out.image = img::package(partitions, rec.bbram_key, *rng_);
  out.provision = dev::Provision{rec.di, rec.bbram_key, model};
  out.sma_artifact = artifact_bytes;
  out.sma_sig = artifact_sig;

  rec.golden = img::golden_measurements(partitions);
  devices_.emplace(rec.di, std::move(rec));
  return out;
}

Ttp::EnrollUserOut Ttp::enroll_user(ByteSpan pk_user32) {
  if (pk_user32.size() != 32) raise(Err::BadKey, "public key must be 32 bytes");
  try {
    crypto::ed_pub_to_x(pk_user32);  // point sanity check
  } catch (const Error&) {
    raise(Err::BadKey, "public key is not a valid point encoding");
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "user-%04llu", static_cast<unsigned long long>(next_uid_++));
  UserRecord rec;
  rec.uid = to_bytes(buf);
  rec.pk_user = to_array<32>(pk_user32);
  EnrollUserOut out;
  out.uid = rec.uid;
  out.cert = crypto::make_certificate(keys_.secret, rec.uid, rec.pk_user);
  out.pk_ttp = keys_.pub;
  users_.push_back(std::move(rec));
  return out;
}

Ttp::VerifyOut Ttp::verify_attestation(const crypto::Signature& delta, ByteSpan epsilon) {
  Bytes plain;
  try {
    plain = crypto::pke_open(crypto::ed_secret_to_x(keys_.secret), epsilon);
  } catch (const Error&) {
    raise(Err::DecryptFail, "cannot open epsilon");
  }
  if (plain.size() != 16 + crypto::kDigestLen + 32) raise(Err::DecryptFail, "epsilon layout");
  ByteReader r(plain);
  std::array<uint8_t, 16> di = r.arr<16>();
  crypto::Digest alpha = r.arr<crypto::kDigestLen>();
  crypto::Key32 pk_dev = r.arr<32>();

  auto it = devices_.find(di);
  if (it == devices_.end()) raise(Err::UnknownDevice, hex_encode(di));
  DeviceRecord& rec = it->second;

  Bytes expected_input = img::h_boot(rec.golden);
  append(expected_input, di);
  crypto::Digest expected_alpha = crypto::hash(expected_input);
  if (alpha != expected_alpha)
    raise(Err::MeasurementMismatch, "boot measurements differ from golden reference");

  if (!crypto::verify(pk_dev, alpha, delta))
    raise(Err::BadReport, "delta does not verify under PK_DEV");

  auto crp = std::find_if(rec.crps.entries.begin(), rec.crps.entries.end(),
                          [](const puf::CrpEntry& e) { return !e.consumed; });
  if (crp == rec.crps.entries.end()) raise(Err::CrpExhausted, "device CRP database exhausted");
  crp->consumed = true;

  VerifyOut out;
  out.cert_dev = crypto::make_certificate(keys_.secret, di, pk_dev);
  out.challenge = crp->challenge;
  Bytes cred_input = puf::pack_bits(crp->response);
  append(cred_input, di);
  out.credential = crypto::hash(cred_input);
  return out;
}

std::pair<size_t, size_t> Ttp::crp_ledger_status(const std::array<uint8_t, 16>& di) const {
  auto it = devices_.find(di);
  if (it == devices_.end()) raise(Err::UnknownDevice, hex_encode(di));
  size_t consumed = 0;
  for (const auto& e : it->second.crps.entries) consumed += e.consumed ? 1 : 0;
  return {it->second.crps.entries.size(), consumed};
}

const DeviceRecord* Ttp::find_device(const std::array<uint8_t, 16>& di) const {
  auto it = devices_.find(di);
  return it == devices_.end() ? nullptr : &it->second;
}

Bytes Ttp::encode_db() const {
  Bytes out(kDbMagic, kDbMagic + 4);
  put_u16(out, kDbVersion);
  append(out, keys_.secret);
  put_u64(out, next_uid_);
  put_u32(out, uint32_t(users_.size()));
  for (const UserRecord& u : users_) {
    put_var2(out, u.uid);
    append(out, u.pk_user);
  }
  put_u32(out, uint32_t(devices_.size()));
  for (const auto& [di, rec] : devices_) {
    append(out, di);
    put_var2(out, rec.csp_id);
    put_var2(out, rec.board_version);
    append(out, rec.bbram_key.key);
    put_var2(out, rec.bbram_key.label);
    append(out, rec.ta_keys.secret);
    put_u32(out, uint32_t(rec.crps.entries.size()));
    for (const puf::CrpEntry& e : rec.crps.entries) {
      put_var2(out, puf::encode_challenge(e.challenge));
      put_var2(out, puf::encode_response(e.response));
      put_u8(out, e.consumed ? 1 : 0);
    }
    for (const crypto::Digest& d : rec.golden.digests) append(out, d);
  }
  return out;
}

Ttp Ttp::decode_db(ByteSpan bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kDbMagic)) raise(Err::Malformed, "db magic");
  if (r.u16() != kDbVersion) raise(Err::Malformed, "db version");
  Ttp t;
  crypto::Key32 seed = r.arr<32>();
  t.keys_ = crypto::sign_keygen(seed);
  t.next_uid_ = r.u64();
  size_t nu = r.u32();
  for (size_t i = 0; i < nu; ++i) {
    UserRecord u;
    u.uid = get_var2(r);
    u.pk_user = r.arr<32>();
    t.users_.push_back(std::move(u));
  }
  size_t nd = r.u32();
  for (size_t i = 0; i < nd; ++i) {
    DeviceRecord rec;
    rec.di = r.arr<16>();
    rec.csp_id = get_var2(r);
    rec.board_version = get_var2(r);
    rec.bbram_key.key = r.arr<32>();
    rec.bbram_key.label = get_var2(r);
    crypto::Key32 ta_seed = r.arr<32>();
    rec.ta_keys = crypto::sign_keygen(ta_seed);
    size_t nc = r.u32();
    for (size_t k = 0; k < nc; ++k) {
      puf::CrpEntry e;
      e.challenge = puf::decode_challenge(get_var2(r));
      e.response = puf::decode_response(get_var2(r));
      e.consumed = r.u8() != 0;
      rec.crps.entries.push_back(std::move(e));
    }
    for (auto& d : rec.golden.digests) d = r.arr<crypto::kDigestLen>();
    t.devices_.emplace(rec.di, std::move(rec));
  }
  r.expect_end();
  return t;
}

void Ttp::save(const std::string& path) const { atomic_write_file(path, encode_db()); }

Ttp Ttp::load(const std::string& path) { return decode_db(read_file(path)); }

}  // namespace rctee::ttp
