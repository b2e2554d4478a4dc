#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "axrv/elf.hpp"
#include "axrv/encoding.hpp"
#include "axrv/model.hpp"
#include "axrv/mulhier.hpp"

namespace axrv {

// CSR addresses understood by the simulator.
inline constexpr uint16_t kAluCsrAddr = 0x800;      // read/write, no effect
inline constexpr uint16_t kMulCsrAddr = 0x801;      // multiplier control
inline constexpr uint16_t kDivCsrAddr = 0x802;      // read/write, no effect
inline constexpr uint16_t kCycleCsrAddr = 0xC00;    // read-only counter
inline constexpr uint16_t kInstretCsrAddr = 0xC02;  // read-only counter
inline constexpr uint16_t kCyclehCsrAddr = 0xC80;
inline constexpr uint16_t kInstrethCsrAddr = 0xC82;

// Flat little-endian byte-addressable memory.  Accessors throw
// std::out_of_range; the simulator bounds-checks before accessing so that
// guest faults halt the guest instead.
class Memory {
 public:
  static constexpr size_t kDefaultSize = 16u << 20;  // 16 MiB

  explicit Memory(size_t size = kDefaultSize) : bytes_(size, 0) {}

  size_t size() const { return bytes_.size(); }
  bool in_bounds(uint32_t addr, uint32_t len) const {
    return static_cast<uint64_t>(addr) + len <= bytes_.size();
  }

  uint8_t load8(uint32_t addr) const;
  uint16_t load16(uint32_t addr) const;  // any alignment
  uint32_t load32(uint32_t addr) const;  // any alignment
  void store8(uint32_t addr, uint8_t value);
  void store16(uint32_t addr, uint16_t value);
  void store32(uint32_t addr, uint32_t value);
  void write(uint32_t addr, const uint8_t* data, size_t n);

 private:
  void check(uint32_t addr, uint32_t len) const;
  std::vector<uint8_t> bytes_;
};

enum class HaltReason : uint8_t {
  None,                // still running
  Ebreak,              // EBREAK retired
  Exit,                // ECALL with a7=93
  IllegalInstruction,  // undecodable word, bad CSR access, RV32E register
  MisalignedPc,        // pc not 4-byte aligned
  MemoryFault,         // fetch/load/store outside memory
  UnsupportedEcall,    // ECALL with an unhandled a7
  BudgetExhausted,     // run() hit max_instructions before the program ended
};

const char* to_string(HaltReason reason);

struct CpuState {
  std::array<uint32_t, 32> regs{};
  uint32_t pc = 0;
  std::map<uint16_t, uint32_t> csrs{
      {kAluCsrAddr, 0}, {kMulCsrAddr, 0}, {kDivCsrAddr, 0}};
  uint64_t cycle = 0;
  uint64_t instret = 0;
  bool halted = false;
  int32_t exit_code = 0;
  HaltReason halt_reason = HaltReason::None;
};

struct SimOptions {
  bool rv32e = false;  // 16 architectural registers instead of 32
  // Which multiplier circuit the execution stage instantiates; the mulcsr
  // picks exact/approximate operation of this unit at runtime.
  CompressorKind mul_unit = CompressorKind::Ssc;
  bool recursive_er = true;  // see config_from_csr
  ErMapping er_mapping = kDefaultErMapping;
  size_t memory_bytes = Memory::kDefaultSize;
  TimingEnergyModel model{};
};

struct RunReport {
  HaltReason reason = HaltReason::None;
  bool budget_exhausted = false;
  int32_t exit_code = 0;
  uint64_t instret = 0;
  uint64_t cycle = 0;
  double cpi = 0;
  double energy_pj = 0;
  double pj_per_instr = 0;
  uint64_t mul_count = 0;  // MUL/MULH/MULHSU/MULHU retired
  uint64_t div_count = 0;  // DIV/DIVU/REM/REMU retired
  std::string diagnostic;   // set on abnormal halts
  std::string stdout_text;  // bytes written via ECALL a7=64
};

// Single JSON object on one line.
std::string to_json(const RunReport& report);

// Instruction-accurate RV32IM(E) core with CSR-switched approximate
// multiplication and an additive timing/energy model.  One instance owns
// its state and memory; instances are independent.
class Simulator {
 public:
  explicit Simulator(SimOptions options = {});

  CpuState& state() { return state_; }
  const CpuState& state() const { return state_; }
  Memory& memory() { return memory_; }
  const Memory& memory() const { return memory_; }
  const SimOptions& options() const { return options_; }

  // Maps PT_LOAD segments and sets pc to the entry point.  Throws
  // ElfError{SegmentOutOfBounds} when a segment does not fit in memory.
  void load_image(const ElfImage& image);

  // Writes little-endian words at addr; lets tests poke programs/data.
  void load_words(uint32_t addr, const std::vector<uint32_t>& words);
  void set_pc(uint32_t pc) { state_.pc = pc; }

  // Executes one instruction.  Faults (illegal instruction, misaligned pc,
  // memory out of bounds, unsupported ecall) halt the core with a
  // diagnostic and do not count as retired.
  void step();

  // Steps until the program halts or max_instructions have been attempted.
  RunReport run(uint64_t max_instructions = kDefaultBudget);

  uint64_t mul_count() const { return mul_count_; }
  uint64_t div_count() const { return div_count_; }
  double energy_pj() const { return energy_pj_; }
  const std::string& guest_stdout() const { return stdout_; }
  const std::string& diagnostic() const { return diagnostic_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Effective multiplier configuration for the current mulcsr value.
  HierConfig active_mul_config() const;

  static constexpr uint64_t kDefaultBudget = 1ull << 32;

 private:
  uint32_t reg(unsigned index) const { return state_.regs[index]; }
  void set_reg(unsigned index, uint32_t value) {
    if (index != 0) state_.regs[index] = value;
  }
  bool regs_valid(const DecodedInstr& ins) const;
  bool csr_read(uint16_t addr, uint32_t& value) const;
  bool csr_write(uint16_t addr, uint32_t value);
  void halt(HaltReason reason, int32_t exit_code, std::string diagnostic);
  void retire(const DecodedInstr& ins, bool taken_branch, bool approx_mul);
  void warn(const std::string& message);

  SimOptions options_;
  CpuState state_;
  Memory memory_;
  uint64_t mul_count_ = 0;
  uint64_t div_count_ = 0;
  double energy_pj_ = 0;
  std::string stdout_;
  std::string diagnostic_;
  std::vector<std::string> warnings_;
};

}  // namespace axrv
