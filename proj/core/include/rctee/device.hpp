// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rctee/image.hpp"
#include "rctee/layout.hpp"
#include "rctee/puf.hpp"

// The simulated FPGA-SoC: measured encrypted boot chain, TOS/ROS world
// separation, OCM and secure memory, PL configuration with kernel
// execution, the four TOS syscalls, and PCAP gating.
namespace rctee::dev {

enum class World : uint8_t { Tos = 0, Ros = 1 };
enum class Prot : uint8_t { Secure = 0, NonSecure = 1 };
enum class Phase : uint8_t { PoweredOff = 0, BootFailed = 1, Running = 2 };
enum class MeasLocation : uint8_t { None = 0, InOcm = 1, InSecureMemory = 2, Cleared = 3 };

enum class BootStage : uint8_t {
  PmuRom = 0,
  CsuRom = 1,
  Fsbl = 2,          // decrypts and measures the remaining partitions
  MeasInOcm = 3,     // measurements staged in the last OCM chunk
  TeeBoot = 4,       // measurements copied to secure memory, OCM slot zeroed
  RosUp = 5,
};
const char* boot_stage_name(BootStage s);

struct StageRecord {
  BootStage stage;
  bool ocm_slot_nonzero;
  MeasLocation meas_location;
};

struct BusAccess {
  uint64_t addr = 0;
  bool is_write = false;
  Prot prot = Prot::NonSecure;
  Bytes data;           // write payload
  size_t read_len = 0;  // read size
};

/// Unified IP invocation: input records, execution-state address, and the
/// output addresses to collect after the kernel finishes.
struct IpInvocation {
  std::vector<std::pair<uint64_t, Bytes>> inputs;
  uint64_t status_addr = 0;
  std::vector<uint64_t> output_addrs;
  bool operator==(const IpInvocation&) const = default;
};

using OutputRecords = std::vector<std::pair<uint64_t, Bytes>>;

/// Deterministic built-in kernels standing in for synthesized IP logic.
/// Throws KERNEL_FAULT on arity or operand errors.
using KernelFn = std::function<std::vector<Bytes>(const std::vector<Bytes>&, size_t)>;
const KernelFn* find_kernel(const std::string& name);

/// Factory-provisioned identity of one physical device.
struct Provision {
  std::array<uint8_t, 16> di{};
  crypto::SymmetricKey bbram_key;
  puf::RoPufModel puf_model;
};

inline constexpr std::array<uint8_t, 16> kPufIpId = {'R', 'C', 'T', 'E', 'E', '-', 'P', 'U',
                                                     'F', '-', 'I', 'P', '0', '0', '0', '1'};

class Soc {
 public:
  explicit Soc(Provision provision);

  /// Runs the boot chain; on any partition authentication failure the
  /// device lands in BootFailed and the error is recorded, not thrown.
  void power_on(const img::BootableImage& image);
  void power_off();

  Bytes syscall_get_boot_hash(World world) const;
  puf::Response syscall_get_hw_puf_response(World world, const puf::Challenge& challenge,
                                            Rng& rng) const;
  void syscall_program_user_hw(World world, ByteSpan bitstream);
  Bytes pcap_readback(World world) const;
  OutputRecords syscall_usr_def_ip(World world, const std::array<uint8_t, 16>& ip_id,
                                   const IpInvocation& invocation);

  /// Bus transaction with AxPROT semantics: secure-region access succeeds
  /// only with Prot::Secure, which only the TOS can drive.
  Bytes bus_access(World world, const BusAccess& access);

  /// Verifies the TA signature under the boot-provisioned PK_TA and returns
  /// the public key of TTP carried by the artifact.
  crypto::Key32 start_ta(ByteSpan artifact, ByteSpan signature);

  /// REE-side staging of a received encrypted bitstream into shared memory.
  void stage_shared(ByteSpan data);
  ByteSpan shared_staged() const;

  Phase phase() const { return phase_; }
  Err boot_failure() const { return boot_failure_; }
  const std::array<uint8_t, 16>& di() const { return provision_.di; }
  const puf::RoPufModel& puf_model() const { return provision_.puf_model; }
  bool pcap_direct_access() const { return pcap_direct_access_; }
  MeasLocation meas_location() const { return meas_location_; }
  bool ta_running() const { return ta_active_; }
  const Bytes& sma_artifact() const { return sma_artifact_; }
  const crypto::Signature& sma_artifact_sig() const { return sma_artifact_sig_; }
  const std::optional<img::BitstreamContainer>& pl_config() const { return pl_config_; }
  const std::vector<StageRecord>& boot_trace() const { return boot_trace_; }
  bool ocm_meas_slot_nonzero() const;

  /// Test hook invoked after each boot stage completes.
  std::function<void(BootStage, const Soc&)> boot_hook;

 private:
  void require_running() const;
  void record_stage(BootStage s);
  uint8_t* map_addr(uint64_t addr, size_t len, bool for_write);
  void phys_write(uint64_t addr, ByteSpan data);
  Bytes phys_read(uint64_t addr, size_t len);
  void write_status(uint64_t addr, layout::IpStatus status);

  Provision provision_;
  Phase phase_ = Phase::PoweredOff;
  Err boot_failure_ = Err::Ok;

  Bytes ocm_;
  Bytes secure_mem_;
  Bytes shared_mem_;

  img::MeasurementSet measurements_{};
  MeasLocation meas_location_ = MeasLocation::None;

  std::optional<img::BitstreamContainer> pl_config_;
  Bytes pl_raw_;
  bool pcap_direct_access_ = false;

  crypto::Key32 pk_ta_{};
  Bytes sma_artifact_;
  crypto::Signature sma_artifact_sig_{};
  bool ta_active_ = false;

  std::vector<StageRecord> boot_trace_;
};

}  // namespace rctee::dev
