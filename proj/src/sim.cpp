#include "axrv/sim.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace axrv {
namespace {

std::string fmt(const char* format, ...) {
  char buf[192];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

}  // namespace

uint8_t Memory::load8(uint32_t addr) const {
  check(addr, 1);
  return bytes_[addr];
}

uint16_t Memory::load16(uint32_t addr) const {
  check(addr, 2);
  return static_cast<uint16_t>(bytes_[addr] | (bytes_[addr + 1] << 8));
}

uint32_t Memory::load32(uint32_t addr) const {
  check(addr, 4);
  return static_cast<uint32_t>(bytes_[addr]) |
         (static_cast<uint32_t>(bytes_[addr + 1]) << 8) |
         (static_cast<uint32_t>(bytes_[addr + 2]) << 16) |
         (static_cast<uint32_t>(bytes_[addr + 3]) << 24);
}

void Memory::store8(uint32_t addr, uint8_t value) {
  check(addr, 1);
  bytes_[addr] = value;
}

void Memory::store16(uint32_t addr, uint16_t value) {
  check(addr, 2);
  bytes_[addr] = static_cast<uint8_t>(value);
  bytes_[addr + 1] = static_cast<uint8_t>(value >> 8);
}

void Memory::store32(uint32_t addr, uint32_t value) {
  check(addr, 4);
  bytes_[addr] = static_cast<uint8_t>(value);
  bytes_[addr + 1] = static_cast<uint8_t>(value >> 8);
  bytes_[addr + 2] = static_cast<uint8_t>(value >> 16);
  bytes_[addr + 3] = static_cast<uint8_t>(value >> 24);
}

void Memory::write(uint32_t addr, const uint8_t* data, size_t n) {
  if (!in_bounds(addr, static_cast<uint32_t>(n)))
    throw std::out_of_range("memory write out of bounds");
  std::copy_n(data, n, bytes_.begin() + addr);
}

void Memory::check(uint32_t addr, uint32_t len) const {
  if (!in_bounds(addr, len)) throw std::out_of_range("memory access out of bounds");
}

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::None: return "none";
    case HaltReason::Ebreak: return "ebreak";
    case HaltReason::Exit: return "exit";
    case HaltReason::IllegalInstruction: return "illegal-instruction";
    case HaltReason::MisalignedPc: return "misaligned-pc";
    case HaltReason::MemoryFault: return "memory-fault";
    case HaltReason::UnsupportedEcall: return "unsupported-ecall";
    case HaltReason::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

std::string to_json(const RunReport& r) {
  nlohmann::json j;
  j["reason"] = to_string(r.reason);
  j["budget_exhausted"] = r.budget_exhausted;
  j["exit_code"] = r.exit_code;
  j["instret"] = r.instret;
  j["cycle"] = r.cycle;
  j["cpi"] = r.cpi;
  j["energy_pj"] = r.energy_pj;
  j["pj_per_instr"] = r.pj_per_instr;
  j["mul_count"] = r.mul_count;
  j["div_count"] = r.div_count;
  j["diagnostic"] = r.diagnostic;
  j["stdout"] = r.stdout_text;
  return j.dump();
}

Simulator::Simulator(SimOptions options)
    : options_(options), memory_(options.memory_bytes) {}

void Simulator::load_image(const ElfImage& image) {
  for (const auto& seg : image.segments) {
    if (!memory_.in_bounds(seg.vaddr, static_cast<uint32_t>(seg.bytes.size())))
      throw ElfError(
          ElfErrorKind::SegmentOutOfBounds,
          fmt("elf: segment at 0x%08x (%zu bytes) does not fit in %zu bytes "
              "of memory",
              seg.vaddr, seg.bytes.size(), memory_.size()));
    memory_.write(seg.vaddr, seg.bytes.data(), seg.bytes.size());
  }
  state_.pc = image.entry;
}

void Simulator::load_words(uint32_t addr, const std::vector<uint32_t>& words) {
  for (size_t i = 0; i < words.size(); ++i)
    memory_.store32(addr + static_cast<uint32_t>(4 * i), words[i]);
}

HierConfig Simulator::active_mul_config() const {
  return config_from_csr(options_.mul_unit,
                         decode_mulcsr(state_.csrs.at(kMulCsrAddr)),
                         options_.recursive_er, options_.er_mapping);
}

bool Simulator::regs_valid(const DecodedInstr& ins) const {
  if (!options_.rv32e) return true;
  const bool imm_zimm = is_csr(ins.op) && ins.op >= Opcode::Csrrwi;
  return ins.rd < 16 && (imm_zimm || ins.rs1 < 16) && ins.rs2 < 16;
}

bool Simulator::csr_read(uint16_t addr, uint32_t& value) const {
  switch (addr) {
    case kAluCsrAddr:
    case kMulCsrAddr:
    case kDivCsrAddr:
      value = state_.csrs.at(addr);
      return true;
    case kCycleCsrAddr:
      value = static_cast<uint32_t>(state_.cycle);
      return true;
    case kCyclehCsrAddr:
      value = static_cast<uint32_t>(state_.cycle >> 32);
      return true;
    case kInstretCsrAddr:
      value = static_cast<uint32_t>(state_.instret);
      return true;
    case kInstrethCsrAddr:
      value = static_cast<uint32_t>(state_.instret >> 32);
      return true;
    default:
      return false;
  }
}

bool Simulator::csr_write(uint16_t addr, uint32_t value) {
  switch (addr) {
    case kAluCsrAddr:
    case kDivCsrAddr:
      state_.csrs[addr] = value;
      return true;
    case kMulCsrAddr: {
      MulCsr fields = decode_mulcsr(value);
      if (fields.circuit_select != 0) {
        warn(fmt("mulcsr write 0x%08x selects circuit %u; only a single "
                 "multiplier unit exists, treating as 00",
                 value, fields.circuit_select));
        value &= ~0x6u;  // legalize: clear bits 2:1
      }
      state_.csrs[addr] = value;
      return true;
    }
    default:
      return false;  // counters and unknown CSRs are not writable
  }
}

void Simulator::halt(HaltReason reason, int32_t exit_code,
                     std::string diagnostic) {
  state_.halted = true;
  state_.halt_reason = reason;
  state_.exit_code = exit_code;
  diagnostic_ = std::move(diagnostic);
}

void Simulator::warn(const std::string& message) {
  warnings_.push_back(message);
  std::fprintf(stderr, "warning: %s\n", message.c_str());
}

void Simulator::retire(const DecodedInstr& ins, bool taken_branch,
                       bool approx_mul) {
  const TimingEnergyModel& m = options_.model;
  uint64_t cost = m.cycles_base;
  double energy = m.epj_base;
  if (is_mul(ins.op)) {
    cost = m.cycles_mul;
    energy = m.mul_energy(options_.mul_unit, approx_mul);
    ++mul_count_;
  } else if (is_div(ins.op)) {
    cost = m.cycles_div;
    ++div_count_;
  } else if (is_load(ins.op)) {
    cost = m.cycles_load;
  } else if (is_store(ins.op)) {
    cost = m.cycles_store;
  } else if (taken_branch) {
    cost = m.cycles_base + m.cycles_branch_taken_penalty;
  }
  state_.cycle += cost;
  state_.instret += 1;
  energy_pj_ += energy;
}

void Simulator::step() {
  if (state_.halted) return;

  const uint32_t pc = state_.pc;
  if (pc & 3u) {
    halt(HaltReason::MisalignedPc, 0, fmt("misaligned pc 0x%08x", pc));
    return;
  }
  if (!memory_.in_bounds(pc, 4)) {
    halt(HaltReason::MemoryFault, 0,
         fmt("instruction fetch out of bounds at pc 0x%08x", pc));
    return;
  }
  const uint32_t word = memory_.load32(pc);
  const DecodedInstr ins = decode(word);
  if (ins.op == Opcode::Illegal) {
    halt(HaltReason::IllegalInstruction, 0,
         fmt("illegal instruction 0x%08x at pc 0x%08x", word, pc));
    return;
  }
  if (!regs_valid(ins)) {
    halt(HaltReason::IllegalInstruction, 0,
         fmt("instruction 0x%08x at pc 0x%08x uses a register above x15 in "
             "rv32e mode",
             word, pc));
    return;
  }

  uint32_t next_pc = pc + 4;
  bool taken_branch = false;
  bool approx_mul = false;
  const uint32_t rs1 = reg(ins.rs1);
  const uint32_t rs2 = reg(ins.rs2);
  const int32_t srs1 = static_cast<int32_t>(rs1);
  const int32_t srs2 = static_cast<int32_t>(rs2);
  const uint32_t uimm = static_cast<uint32_t>(ins.imm);

  switch (ins.op) {
    case Opcode::Lui:
      set_reg(ins.rd, uimm);
      break;
    case Opcode::Auipc:
      set_reg(ins.rd, pc + uimm);
      break;
    case Opcode::Jal:
      set_reg(ins.rd, pc + 4);
      next_pc = pc + uimm;
      taken_branch = true;
      break;
    case Opcode::Jalr:
      set_reg(ins.rd, pc + 4);
      next_pc = (rs1 + uimm) & ~1u;
      taken_branch = true;
      break;

    case Opcode::Beq: taken_branch = rs1 == rs2; break;
    case Opcode::Bne: taken_branch = rs1 != rs2; break;
    case Opcode::Blt: taken_branch = srs1 < srs2; break;
    case Opcode::Bge: taken_branch = srs1 >= srs2; break;
    case Opcode::Bltu: taken_branch = rs1 < rs2; break;
    case Opcode::Bgeu: taken_branch = rs1 >= rs2; break;

    case Opcode::Lb:
    case Opcode::Lh:
    case Opcode::Lw:
    case Opcode::Lbu:
    case Opcode::Lhu: {
      const uint32_t addr = rs1 + uimm;
      const uint32_t len = ins.op == Opcode::Lw ? 4
                           : (ins.op == Opcode::Lh || ins.op == Opcode::Lhu)
                               ? 2
                               : 1;
      if (!memory_.in_bounds(addr, len)) {
        halt(HaltReason::MemoryFault, 0,
             fmt("load of %u bytes at 0x%08x out of bounds (pc 0x%08x)", len,
                 addr, pc));
        return;
      }
      uint32_t value = 0;
      switch (ins.op) {
        case Opcode::Lb:
          value = static_cast<uint32_t>(
              static_cast<int32_t>(static_cast<int8_t>(memory_.load8(addr))));
          break;
        case Opcode::Lbu: value = memory_.load8(addr); break;
        case Opcode::Lh:
          value = static_cast<uint32_t>(static_cast<int32_t>(
              static_cast<int16_t>(memory_.load16(addr))));
          break;
        case Opcode::Lhu: value = memory_.load16(addr); break;
        default: value = memory_.load32(addr); break;
      }
      set_reg(ins.rd, value);
      break;
    }

    case Opcode::Sb:
    case Opcode::Sh:
    case Opcode::Sw: {
      const uint32_t addr = rs1 + uimm;
      const uint32_t len = ins.op == Opcode::Sw ? 4
                           : ins.op == Opcode::Sh ? 2
                                                  : 1;
      if (!memory_.in_bounds(addr, len)) {
        halt(HaltReason::MemoryFault, 0,
             fmt("store of %u bytes at 0x%08x out of bounds (pc 0x%08x)", len,
                 addr, pc));
        return;
      }
      if (ins.op == Opcode::Sb) memory_.store8(addr, static_cast<uint8_t>(rs2));
      else if (ins.op == Opcode::Sh)
        memory_.store16(addr, static_cast<uint16_t>(rs2));
      else memory_.store32(addr, rs2);
      break;
    }

    case Opcode::Addi: set_reg(ins.rd, rs1 + uimm); break;
    case Opcode::Slti: set_reg(ins.rd, srs1 < ins.imm ? 1 : 0); break;
    case Opcode::Sltiu: set_reg(ins.rd, rs1 < uimm ? 1 : 0); break;
    case Opcode::Xori: set_reg(ins.rd, rs1 ^ uimm); break;
    case Opcode::Ori: set_reg(ins.rd, rs1 | uimm); break;
    case Opcode::Andi: set_reg(ins.rd, rs1 & uimm); break;
    case Opcode::Slli: set_reg(ins.rd, rs1 << (uimm & 31)); break;
    case Opcode::Srli: set_reg(ins.rd, rs1 >> (uimm & 31)); break;
    case Opcode::Srai:
      set_reg(ins.rd, static_cast<uint32_t>(srs1 >> (uimm & 31)));
      break;

    case Opcode::Add: set_reg(ins.rd, rs1 + rs2); break;
    case Opcode::Sub: set_reg(ins.rd, rs1 - rs2); break;
    case Opcode::Sll: set_reg(ins.rd, rs1 << (rs2 & 31)); break;
    case Opcode::Slt: set_reg(ins.rd, srs1 < srs2 ? 1 : 0); break;
    case Opcode::Sltu: set_reg(ins.rd, rs1 < rs2 ? 1 : 0); break;
    case Opcode::Xor: set_reg(ins.rd, rs1 ^ rs2); break;
    case Opcode::Srl: set_reg(ins.rd, rs1 >> (rs2 & 31)); break;
    case Opcode::Sra:
      set_reg(ins.rd, static_cast<uint32_t>(srs1 >> (rs2 & 31)));
      break;
    case Opcode::Or: set_reg(ins.rd, rs1 | rs2); break;
    case Opcode::And: set_reg(ins.rd, rs1 & rs2); break;

    case Opcode::Mul:
    case Opcode::Mulh:
    case Opcode::Mulhsu:
    case Opcode::Mulhu: {
      const HierConfig cfg = active_mul_config();
      approx_mul = cfg.kind != CompressorKind::Exact &&
                   (cfg.er_ll & cfg.er_x & cfg.er_hh) != 0xFF;
      const MulOp op = ins.op == Opcode::Mul      ? MulOp::Mul
                       : ins.op == Opcode::Mulh   ? MulOp::Mulh
                       : ins.op == Opcode::Mulhsu ? MulOp::Mulhsu
                                                  : MulOp::Mulhu;
      set_reg(ins.rd, mul_signed(rs1, rs2, op, cfg));
      break;
    }

    case Opcode::Div:
      if (rs2 == 0) set_reg(ins.rd, 0xFFFFFFFFu);
      else if (srs1 == std::numeric_limits<int32_t>::min() && srs2 == -1)
        set_reg(ins.rd, rs1);  // overflow: quotient = dividend
      else set_reg(ins.rd, static_cast<uint32_t>(srs1 / srs2));
      break;
    case Opcode::Divu:
      set_reg(ins.rd, rs2 == 0 ? 0xFFFFFFFFu : rs1 / rs2);
      break;
    case Opcode::Rem:
      if (rs2 == 0) set_reg(ins.rd, rs1);
      else if (srs1 == std::numeric_limits<int32_t>::min() && srs2 == -1)
        set_reg(ins.rd, 0);
      else set_reg(ins.rd, static_cast<uint32_t>(srs1 % srs2));
      break;
    case Opcode::Remu:
      set_reg(ins.rd, rs2 == 0 ? rs1 : rs1 % rs2);
      break;

    case Opcode::Fence:
      break;  // single hart, no reordering to fence

    case Opcode::Ecall: {
      const uint32_t syscall = reg(reg::a7);
      if (syscall == 93) {  // exit
        halt(HaltReason::Exit, static_cast<int32_t>(reg(reg::a0)), {});
        retire(ins, false, false);
        return;
      }
      if (syscall == 64) {  // write(fd, buf, len) to simulator stdout
        const uint32_t buf = reg(reg::a1);
        const uint32_t len = reg(reg::a2);
        if (!memory_.in_bounds(buf, len)) {
          halt(HaltReason::MemoryFault, 0,
               fmt("ecall write of %u bytes at 0x%08x out of bounds (pc "
                   "0x%08x)",
                   len, buf, pc));
          return;
        }
        for (uint32_t i = 0; i < len; ++i)
          stdout_.push_back(static_cast<char>(memory_.load8(buf + i)));
        set_reg(reg::a0, len);
        break;
      }
      halt(HaltReason::UnsupportedEcall, 0,
           fmt("unsupported ecall %u at pc 0x%08x", syscall, pc));
      return;
    }
    case Opcode::Ebreak:
      halt(HaltReason::Ebreak, 0, {});
      retire(ins, false, false);
      return;

    case Opcode::Csrrw:
    case Opcode::Csrrs:
    case Opcode::Csrrc:
    case Opcode::Csrrwi:
    case Opcode::Csrrsi:
    case Opcode::Csrrci: {
      const bool imm_form = ins.op >= Opcode::Csrrwi;
      const uint32_t operand = imm_form ? ins.rs1 : rs1;
      // CSRRW/CSRRWI always write; the set/clear forms write only when
      // rs1/zimm (both stored in rs1) is nonzero.
      const bool is_write = ins.op == Opcode::Csrrw ||
                            ins.op == Opcode::Csrrwi || ins.rs1 != 0;
      uint32_t old = 0;
      if (!csr_read(ins.csr, old)) {
        halt(HaltReason::IllegalInstruction, 0,
             fmt("access to unimplemented csr 0x%03x at pc 0x%08x", ins.csr,
                 pc));
        return;
      }
      if (is_write) {
        uint32_t value = operand;
        if (ins.op == Opcode::Csrrs || ins.op == Opcode::Csrrsi)
          value = old | operand;
        else if (ins.op == Opcode::Csrrc || ins.op == Opcode::Csrrci)
          value = old & ~operand;
        if (!csr_write(ins.csr, value)) {
          halt(HaltReason::IllegalInstruction, 0,
               fmt("write to read-only csr 0x%03x at pc 0x%08x", ins.csr, pc));
          return;
        }
      }
      set_reg(ins.rd, old);
      break;
    }

    case Opcode::Illegal:
      return;  // unreachable; handled above
  }

  if (is_branch(ins.op) && taken_branch) next_pc = pc + uimm;
  state_.pc = next_pc;
  retire(ins, taken_branch, approx_mul);
}

RunReport Simulator::run(uint64_t max_instructions) {
  uint64_t steps = 0;
  while (!state_.halted && steps < max_instructions) {
    step();
    ++steps;
  }

  RunReport report;
  report.budget_exhausted = !state_.halted;
  report.reason =
      state_.halted ? state_.halt_reason : HaltReason::BudgetExhausted;
  report.exit_code = state_.exit_code;
  report.instret = state_.instret;
  report.cycle = state_.cycle;
  report.cpi = state_.instret
                   ? static_cast<double>(state_.cycle) /
                         static_cast<double>(state_.instret)
                   : 0.0;
  report.energy_pj = energy_pj_;
  report.pj_per_instr =
      state_.instret ? energy_pj_ / static_cast<double>(state_.instret) : 0.0;
  report.mul_count = mul_count_;
  report.div_count = div_count_;
  report.diagnostic = diagnostic_;
  report.stdout_text = stdout_;
  return report;
}

}  // namespace axrv
