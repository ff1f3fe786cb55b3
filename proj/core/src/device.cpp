// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/device.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>

namespace rctee::dev {

const char* boot_stage_name(BootStage s) {
  switch (s) {
    case BootStage::PmuRom: return "PMU_ROM";
    case BootStage::CsuRom: return "CSU_ROM";
    case BootStage::Fsbl: return "FSBL";
    case BootStage::MeasInOcm: return "MEAS_IN_OCM";
    case BootStage::TeeBoot: return "TEE_BOOT";
    case BootStage::RosUp: return "ROS_UP";
  }
  return "?";
}

namespace {

[[noreturn]] void kernel_fault(const std::string& what) { raise(Err::KernelFault, what); }

uint32_t be32(ByteSpan b) {
  return uint32_t(b[0]) << 24 | uint32_t(b[1]) << 16 | uint32_t(b[2]) << 8 | b[3];
}

std::vector<Bytes> kernel_echo(const std::vector<Bytes>& in, size_t n_out) {
  if (in.size() != n_out) kernel_fault("echo needs one output per input");
  return in;
}

std::vector<Bytes> kernel_add32(const std::vector<Bytes>& in, size_t n_out) {
  if (in.size() != 2 || n_out != 1) kernel_fault("add32 takes 2 inputs, 1 output");
  if (in[0].size() != 4 || in[1].size() != 4) kernel_fault("add32 operands must be 4 bytes");
  uint32_t sum = be32(in[0]) + be32(in[1]);
  Bytes out;
  put_u32(out, sum);
  return {out};
}

std::vector<Bytes> kernel_xor(const std::vector<Bytes>& in, size_t n_out) {
  if (in.size() != 2 || n_out != 1) kernel_fault("xor takes 2 inputs, 1 output");
  if (in[0].size() != in[1].size()) kernel_fault("xor operands must match in length");
  Bytes out(in[0].size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = in[0][i] ^ in[1][i];
  return {out};
}

std::vector<Bytes> kernel_sha384(const std::vector<Bytes>& in, size_t n_out) {
  if (n_out != 1) kernel_fault("sha384 produces 1 output");
  Bytes all;
  for (const Bytes& b : in) append(all, b);
  crypto::Digest d = crypto::hash(all);
  return {Bytes(d.begin(), d.end())};
}

std::vector<Bytes> kernel_lenet_stub(const std::vector<Bytes>& in, size_t n_out) {
  if (n_out != 1) kernel_fault("lenet_stub produces 1 output");
  Bytes all = to_bytes("lenet-stub");
  for (const Bytes& b : in) append(all, b);
  crypto::Digest d = crypto::hash(all);
  return {Bytes(d.begin(), d.begin() + 10)};  // pseudo-logits, 10 classes
}

const std::map<std::string, KernelFn>& kernel_registry() {
  static const std::map<std::string, KernelFn> registry = {
      {"echo", kernel_echo},     {"add32", kernel_add32},           {"xor", kernel_xor},
      {"sha384", kernel_sha384}, {"lenet_stub", kernel_lenet_stub},
  };
  return registry;
}

}  // namespace

const KernelFn* find_kernel(const std::string& name) {
  auto it = kernel_registry().find(name);
  return it == kernel_registry().end() ? nullptr : &it->second;
}

Soc::Soc(Provision provision) : provision_(std::move(provision)) {
  ocm_.resize(layout::kOcmSize, 0);
  secure_mem_.resize(layout::kSecureSize, 0);
}

void Soc::record_stage(BootStage s) {
  boot_trace_.push_back({s, ocm_meas_slot_nonzero(), meas_location_});
  if (boot_hook) boot_hook(s, *this);
}

bool Soc::ocm_meas_slot_nonzero() const {
  auto begin = ocm_.begin() + layout::kOcmMeasOffset;
  return std::any_of(begin, begin + img::kHBootLen, [](uint8_t b) { return b != 0; });
}

void Soc::power_off() {
  phase_ = Phase::PoweredOff;
  boot_failure_ = Err::Ok;
  std::fill(ocm_.begin(), ocm_.end(), 0);
  std::fill(secure_mem_.begin(), secure_mem_.end(), 0);
  shared_mem_.clear();
  measurements_ = {};
  meas_location_ = MeasLocation::None;
  pl_config_.reset();
  pl_raw_.clear();
  pcap_direct_access_ = false;
  pk_ta_ = {};
  sma_artifact_.clear();
  sma_artifact_sig_ = {};
  ta_active_ = false;
  boot_trace_.clear();
}

void Soc::power_on(const img::BootableImage& image) {
  if (phase_ != Phase::PoweredOff) raise(Err::BadState, "device already powered");
  auto fail = [&](Err code) {
    power_off();
    phase_ = Phase::BootFailed;
    boot_failure_ = code;
  };

  record_stage(BootStage::PmuRom);
  record_stage(BootStage::CsuRom);
  try {
    // CSU decrypts FSBL; FSBL decrypts and measures the remaining
    // partitions. The simulation folds both into unpack_and_measure, which
    // walks the canonical order starting at FSBL.
    auto [partitions, ms] = img::unpack_and_measure(image, provision_.bbram_key);
    record_stage(BootStage::Fsbl);

    auto [pcap_flag, pmu_body] = img::parse_pmu_fw_payload(partitions[1].payload);
    pcap_direct_access_ = pcap_flag;
    auto [pk_ta, tee_body] = img::parse_tee_payload(partitions[4].payload);
    pk_ta_ = pk_ta;
    img::LinuxPayload linux_payload = img::parse_linux_payload(partitions[6].payload);
    sma_artifact_ = linux_payload.sma_artifact;
    sma_artifact_sig_ = linux_payload.artifact_sig;

    pl_raw_ = partitions[2].payload;
    pl_config_ = img::decode_bitstream(pl_raw_);

    // FSBL stages the measurements in the last OCM chunk.
    Bytes hb = img::h_boot(ms);
    std::copy(hb.begin(), hb.end(), ocm_.begin() + layout::kOcmMeasOffset);
    measurements_ = ms;
    meas_location_ = MeasLocation::InOcm;
    record_stage(BootStage::MeasInOcm);

    // TEE boot moves them into secure memory and clears the OCM slot.
    std::copy(hb.begin(), hb.end(), secure_mem_.begin());
    std::fill(ocm_.begin() + layout::kOcmMeasOffset,
              ocm_.begin() + layout::kOcmMeasOffset + img::kHBootLen, 0);
    meas_location_ = MeasLocation::InSecureMemory;
    record_stage(BootStage::TeeBoot);

    phase_ = Phase::Running;
    record_stage(BootStage::RosUp);
  } catch (const Error& e) {
    switch (e.code()) {
      case Err::AuthFail: fail(Err::BootAuthFail); break;
      case Err::Malformed:
      case Err::MalformedImage:
      case Err::AddrOutOfRegion:
      case Err::AddrCollision: fail(Err::MalformedImage); break;
      default: fail(e.code()); break;
    }
  }
}

void Soc::require_running() const {
  if (phase_ != Phase::Running) raise(Err::NotRunning, "device is not running");
}

Bytes Soc::syscall_get_boot_hash(World world) const {
  require_running();
  if (world != World::Tos) raise(Err::WorldViolation, "syscall_get_boot_hash requires TOS");
  return img::h_boot(measurements_);
}

puf::Response Soc::syscall_get_hw_puf_response(World world, const puf::Challenge& challenge,
                                               Rng& rng) const {
  require_running();
  if (world != World::Tos) raise(Err::WorldViolation, "syscall_get_hw_puf_response requires TOS");
  bool puf_present =
      pl_config_ && std::any_of(pl_config_->ips.begin(), pl_config_->ips.end(),
                                [](const img::IpDescriptor& ip) { return ip.ip_id == kPufIpId; });
  if (!puf_present) raise(Err::PufNotPresent, "user design replaced the initial PL design");
  return puf::evaluate(provision_.puf_model, challenge, rng);
}

void Soc::syscall_program_user_hw(World world, ByteSpan bitstream) {
  require_running();
  if (world != World::Tos) raise(Err::WorldViolation, "syscall_program_user_hw requires TOS");
  // Validate fully before touching PL state; a failed call leaves the
  // current configuration in place.
  img::BitstreamContainer next = img::decode_bitstream(bitstream);
  pl_config_ = std::move(next);
  pl_raw_.assign(bitstream.begin(), bitstream.end());
}

Bytes Soc::pcap_readback(World world) const {
  require_running();
  (void)world;  // with standard firmware PCAP is open to both worlds
  if (!pcap_direct_access_) raise(Err::PcapDisabled, "custom PMU firmware gates PCAP");
  return pl_raw_;
}

uint8_t* Soc::map_addr(uint64_t addr, size_t len, bool for_write) {
  if (layout::in_secure_region(addr)) {
    if (addr + len > layout::kSecureEnd) raise(Err::AddrUnmapped, "secure region overrun");
    return secure_mem_.data() + (addr - layout::kSecureBase);
  }
  if (layout::in_shared_region(addr)) {
    if (addr + len > layout::kSharedEnd) raise(Err::AddrUnmapped, "shared region overrun");
    size_t off = size_t(addr - layout::kSharedBase);
    if (off + len > shared_mem_.size()) {
      if (!for_write) return nullptr;  // reads past staged data see zeros
      shared_mem_.resize(off + len, 0);
    }
    return shared_mem_.data() + off;
  }
  raise(Err::AddrUnmapped, "address not mapped");
}

void Soc::phys_write(uint64_t addr, ByteSpan data) {
  uint8_t* p = map_addr(addr, data.size(), true);
  std::memcpy(p, data.data(), data.size());
}

Bytes Soc::phys_read(uint64_t addr, size_t len) {
  uint8_t* p = map_addr(addr, len, false);
  Bytes out(len, 0);
  if (p) std::memcpy(out.data(), p, len);
  return out;
}

void Soc::write_status(uint64_t addr, layout::IpStatus status) {
  Bytes word;
  put_u32(word, uint32_t(status));
  phys_write(addr, word);
}

OutputRecords Soc::syscall_usr_def_ip(World world, const std::array<uint8_t, 16>& ip_id,
                                      const IpInvocation& invocation) {
  require_running();
  if (world != World::Tos) raise(Err::WorldViolation, "syscall_usr_def_ip requires TOS");
  if (!pl_config_) raise(Err::UnknownIp, "PL not configured");
  auto it = std::find_if(pl_config_->ips.begin(), pl_config_->ips.end(),
                         [&](const img::IpDescriptor& ip) { return ip.ip_id == ip_id; });
  if (it == pl_config_->ips.end()) raise(Err::UnknownIp, "no such IP in PL");
  const img::IpDescriptor& ip = *it;

  if (invocation.status_addr != ip.status_addr)
    raise(Err::AddrMismatch, "execution-state address not in IP map");
  std::set<uint64_t> declared_in(ip.input_addrs.begin(), ip.input_addrs.end());
  std::set<uint64_t> used;
  for (const auto& [addr, data] : invocation.inputs) {
    (void)data;
    if (!declared_in.count(addr)) raise(Err::AddrMismatch, "input address not in IP map");
    if (!used.insert(addr).second) raise(Err::AddrMismatch, "input address repeated");
  }
  std::set<uint64_t> declared_out(ip.output_addrs.begin(), ip.output_addrs.end());
  used.clear();
  for (uint64_t addr : invocation.output_addrs) {
    if (!declared_out.count(addr)) raise(Err::AddrMismatch, "output address not in IP map");
    if (!used.insert(addr).second) raise(Err::AddrMismatch, "output address repeated");
  }

  const KernelFn* kernel = find_kernel(ip.kernel_name);
  if (!kernel) raise(Err::KernelFault, "no kernel bound to " + ip.kernel_name);

  for (const auto& [addr, data] : invocation.inputs) phys_write(addr, data);
  write_status(invocation.status_addr, layout::IpStatus::Running);

  std::vector<Bytes> inputs;
  inputs.reserve(invocation.inputs.size());
  for (const auto& [addr, data] : invocation.inputs) inputs.push_back(data);

  std::vector<Bytes> outputs;
  try {
    outputs = (*kernel)(inputs, invocation.output_addrs.size());
  } catch (const Error&) {
    write_status(invocation.status_addr, layout::IpStatus::Fault);
    throw;
  }
  if (outputs.size() != invocation.output_addrs.size()) {
    write_status(invocation.status_addr, layout::IpStatus::Fault);
    raise(Err::KernelFault, "kernel output arity");
  }

  OutputRecords records;
  for (size_t i = 0; i < outputs.size(); ++i) {
    phys_write(invocation.output_addrs[i], outputs[i]);
    records.emplace_back(invocation.output_addrs[i],
                         phys_read(invocation.output_addrs[i], outputs[i].size()));
  }
  write_status(invocation.status_addr, layout::IpStatus::Done);
  return records;
}

Bytes Soc::bus_access(World world, const BusAccess& access) {
  require_running();
  bool secure = access.prot == Prot::Secure;
  // AxPROT is driven by the issuing world; a mismatch is not a legal
  // transaction on this fabric.
  if (secure != (world == World::Tos)) raise(Err::ProtViolation, "prot bit does not match world");
  size_t len = access.is_write ? access.data.size() : access.read_len;
  if (layout::in_secure_region(access.addr) && !secure)
    raise(Err::ProtViolation, "non-secure access to secure region");
  if (access.is_write) {
    phys_write(access.addr, access.data);
    return {};
  }
  return phys_read(access.addr, len);
}

crypto::Key32 Soc::start_ta(ByteSpan artifact, ByteSpan signature) {
  require_running();
  if (!crypto::verify(pk_ta_, artifact, signature))
    raise(Err::TaAuthFail, "TA signature does not verify under PK_TA");
  // Artifact layout: "RCSM" magic, u16 version, PK_TTP.
  ByteReader r(artifact);
  auto magic = r.take(4);
  static const char kMagic[4] = {'R', 'C', 'S', 'M'};
  if (!std::equal(magic.begin(), magic.end(), kMagic)) raise(Err::TaAuthFail, "artifact magic");
  r.u16();
  crypto::Key32 pk_ttp = r.arr<32>();
  r.expect_end();
  ta_active_ = true;
  return pk_ttp;
}

void Soc::stage_shared(ByteSpan data) {
  require_running();
  // The staged blob is stored length-prefixed inside the shared window.
  if (data.size() + 8 > layout::kSharedSize)
    raise(Err::SharedMemOverflow, "payload exceeds shared region");
  shared_mem_.clear();
  put_u64(shared_mem_, data.size());
  append(shared_mem_, data);
}

ByteSpan Soc::shared_staged() const {
  if (shared_mem_.size() < 8) return {};
  ByteReader r(shared_mem_);
  size_t n = r.u64();
  if (shared_mem_.size() < 8 + n) return {};
  return ByteSpan(shared_mem_).subspan(8, n);
}

}  // namespace rctee::dev
