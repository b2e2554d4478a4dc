#include "axrv/encoding.hpp"

#include <cstdio>
#include <stdexcept>

namespace axrv {
namespace {

constexpr uint32_t kOpcLui = 0x37, kOpcAuipc = 0x17, kOpcJal = 0x6F,
                   kOpcJalr = 0x67, kOpcBranch = 0x63, kOpcLoad = 0x03,
                   kOpcStore = 0x23, kOpcOpImm = 0x13, kOpcOp = 0x33,
                   kOpcMiscMem = 0x0F, kOpcSystem = 0x73;

constexpr int32_t sext(uint32_t value, unsigned bits) {
  return static_cast<int32_t>(value << (32 - bits)) >>
         static_cast<int32_t>(32 - bits);
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("encode: " + what);
}

uint32_t check_reg(unsigned r, const char* name) {
  if (r > 31) bad(std::string(name) + " register out of range");
  return r;
}

uint32_t r_type(uint32_t f7, const DecodedInstr& d, uint32_t f3, uint32_t opc) {
  return (f7 << 25) | (check_reg(d.rs2, "rs2") << 20) |
         (check_reg(d.rs1, "rs1") << 15) | (f3 << 12) |
         (check_reg(d.rd, "rd") << 7) | opc;
}

uint32_t i_type(const DecodedInstr& d, uint32_t f3, uint32_t opc) {
  if (d.imm < -2048 || d.imm > 2047) bad("12-bit immediate out of range");
  return (static_cast<uint32_t>(d.imm & 0xFFF) << 20) |
         (check_reg(d.rs1, "rs1") << 15) | (f3 << 12) |
         (check_reg(d.rd, "rd") << 7) | opc;
}

uint32_t shift_type(uint32_t f7, const DecodedInstr& d, uint32_t f3) {
  if (d.imm < 0 || d.imm > 31) bad("shift amount out of range");
  return (f7 << 25) | (static_cast<uint32_t>(d.imm) << 20) |
         (check_reg(d.rs1, "rs1") << 15) | (f3 << 12) |
         (check_reg(d.rd, "rd") << 7) | kOpcOpImm;
}

uint32_t s_type(const DecodedInstr& d, uint32_t f3) {
  if (d.imm < -2048 || d.imm > 2047) bad("store offset out of range");
  const uint32_t imm = static_cast<uint32_t>(d.imm & 0xFFF);
  return ((imm >> 5) << 25) | (check_reg(d.rs2, "rs2") << 20) |
         (check_reg(d.rs1, "rs1") << 15) | (f3 << 12) | ((imm & 0x1F) << 7) |
         kOpcStore;
}

uint32_t b_type(const DecodedInstr& d, uint32_t f3) {
  if (d.imm < -4096 || d.imm > 4094 || (d.imm & 1))
    bad("branch offset out of range or odd");
  const uint32_t imm = static_cast<uint32_t>(d.imm);
  return (((imm >> 12) & 1) << 31) | (((imm >> 5) & 0x3F) << 25) |
         (check_reg(d.rs2, "rs2") << 20) | (check_reg(d.rs1, "rs1") << 15) |
         (f3 << 12) | (((imm >> 1) & 0xF) << 8) | (((imm >> 11) & 1) << 7) |
         kOpcBranch;
}

uint32_t u_type(const DecodedInstr& d, uint32_t opc) {
  if (static_cast<uint32_t>(d.imm) & 0xFFFu)
    bad("upper immediate has nonzero low 12 bits");
  return static_cast<uint32_t>(d.imm) | (check_reg(d.rd, "rd") << 7) | opc;
}

uint32_t j_type(const DecodedInstr& d) {
  if (d.imm < -(1 << 20) || d.imm > (1 << 20) - 2 || (d.imm & 1))
    bad("jump offset out of range or odd");
  const uint32_t imm = static_cast<uint32_t>(d.imm);
  return (((imm >> 20) & 1) << 31) | (((imm >> 1) & 0x3FF) << 21) |
         (((imm >> 11) & 1) << 20) | (((imm >> 12) & 0xFF) << 12) |
         (check_reg(d.rd, "rd") << 7) | kOpcJal;
}

uint32_t csr_type(const DecodedInstr& d, uint32_t f3) {
  if (d.csr > 0xFFF) bad("csr address out of range");
  if (d.rs1 > 31) bad("rs1/zimm out of range");
  return (static_cast<uint32_t>(d.csr) << 20) |
         (static_cast<uint32_t>(d.rs1) << 15) | (f3 << 12) |
         (check_reg(d.rd, "rd") << 7) | kOpcSystem;
}

}  // namespace

const char* mnemonic(Opcode op) {
  static const char* const kNames[] = {
      "lui",   "auipc", "jal",    "jalr",   "beq",    "bne",    "blt",
      "bge",   "bltu",  "bgeu",   "lb",     "lh",     "lw",     "lbu",
      "lhu",   "sb",    "sh",     "sw",     "addi",   "slti",   "sltiu",
      "xori",  "ori",   "andi",   "slli",   "srli",   "srai",   "add",
      "sub",   "sll",   "slt",    "sltu",   "xor",    "srl",    "sra",
      "or",    "and",   "fence",  "ecall",  "ebreak", "csrrw",  "csrrs",
      "csrrc", "csrrwi", "csrrsi", "csrrci", "mul",   "mulh",   "mulhsu",
      "mulhu", "div",   "divu",   "rem",    "remu",   "illegal"};
  return kNames[static_cast<size_t>(op)];
}

bool is_load(Opcode op) { return op >= Opcode::Lb && op <= Opcode::Lhu; }
bool is_store(Opcode op) { return op >= Opcode::Sb && op <= Opcode::Sw; }
bool is_branch(Opcode op) { return op >= Opcode::Beq && op <= Opcode::Bgeu; }
bool is_jump(Opcode op) { return op == Opcode::Jal || op == Opcode::Jalr; }
bool is_mul(Opcode op) { return op >= Opcode::Mul && op <= Opcode::Mulhu; }
bool is_div(Opcode op) { return op >= Opcode::Div && op <= Opcode::Remu; }
bool is_csr(Opcode op) { return op >= Opcode::Csrrw && op <= Opcode::Csrrci; }

DecodedInstr decode(uint32_t w) {
  DecodedInstr d;  // defaults to Illegal with canonical zero fields
  const uint32_t opc = w & 0x7F;
  const uint8_t rd = (w >> 7) & 0x1F;
  const uint32_t f3 = (w >> 12) & 0x7;
  const uint8_t rs1 = (w >> 15) & 0x1F;
  const uint8_t rs2 = (w >> 20) & 0x1F;
  const uint32_t f7 = w >> 25;
  const int32_t imm_i = sext(w >> 20, 12);

  switch (opc) {
    case kOpcLui:
    case kOpcAuipc:
      d.op = opc == kOpcLui ? Opcode::Lui : Opcode::Auipc;
      d.rd = rd;
      d.imm = static_cast<int32_t>(w & 0xFFFFF000u);
      return d;

    case kOpcJal: {
      d.op = Opcode::Jal;
      d.rd = rd;
      const uint32_t imm = (((w >> 31) & 1) << 20) | (((w >> 12) & 0xFF) << 12) |
                           (((w >> 20) & 1) << 11) | (((w >> 21) & 0x3FF) << 1);
      d.imm = sext(imm, 21);
      return d;
    }

    case kOpcJalr:
      if (f3 != 0) break;
      d.op = Opcode::Jalr;
      d.rd = rd;
      d.rs1 = rs1;
      d.imm = imm_i;
      return d;

    case kOpcBranch: {
      static constexpr Opcode kByF3[8] = {
          Opcode::Beq,     Opcode::Bne,  Opcode::Illegal, Opcode::Illegal,
          Opcode::Blt,     Opcode::Bge,  Opcode::Bltu,    Opcode::Bgeu};
      if (kByF3[f3] == Opcode::Illegal) break;
      d.op = kByF3[f3];
      d.rs1 = rs1;
      d.rs2 = rs2;
      const uint32_t imm = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) |
                           (((w >> 25) & 0x3F) << 5) | (((w >> 8) & 0xF) << 1);
      d.imm = sext(imm, 13);
      return d;
    }

    case kOpcLoad: {
      static constexpr Opcode kByF3[8] = {
          Opcode::Lb,      Opcode::Lh,      Opcode::Lw,  Opcode::Illegal,
          Opcode::Lbu,     Opcode::Lhu,     Opcode::Illegal, Opcode::Illegal};
      if (kByF3[f3] == Opcode::Illegal) break;
      d.op = kByF3[f3];
      d.rd = rd;
      d.rs1 = rs1;
      d.imm = imm_i;
      return d;
    }

    case kOpcStore: {
      static constexpr Opcode kByF3[8] = {
          Opcode::Sb,      Opcode::Sh,      Opcode::Sw,      Opcode::Illegal,
          Opcode::Illegal, Opcode::Illegal, Opcode::Illegal, Opcode::Illegal};
      if (kByF3[f3] == Opcode::Illegal) break;
      d.op = kByF3[f3];
      d.rs1 = rs1;
      d.rs2 = rs2;
      d.imm = sext((f7 << 5) | rd, 12);
      return d;
    }

    case kOpcOpImm: {
      d.rd = rd;
      d.rs1 = rs1;
      switch (f3) {
        case 0: d.op = Opcode::Addi; d.imm = imm_i; return d;
        case 1:
          if (f7 != 0) break;
          d.op = Opcode::Slli;
          d.imm = rs2;
          return d;
        case 2: d.op = Opcode::Slti; d.imm = imm_i; return d;
        case 3: d.op = Opcode::Sltiu; d.imm = imm_i; return d;
        case 4: d.op = Opcode::Xori; d.imm = imm_i; return d;
        case 5:
          if (f7 == 0x00) { d.op = Opcode::Srli; d.imm = rs2; return d; }
          if (f7 == 0x20) { d.op = Opcode::Srai; d.imm = rs2; return d; }
          break;
        case 6: d.op = Opcode::Ori; d.imm = imm_i; return d;
        case 7: d.op = Opcode::Andi; d.imm = imm_i; return d;
      }
      break;
    }

    case kOpcOp: {
      static constexpr Opcode kBase[8] = {Opcode::Add, Opcode::Sll,
                                          Opcode::Slt, Opcode::Sltu,
                                          Opcode::Xor, Opcode::Srl,
                                          Opcode::Or,  Opcode::And};
      static constexpr Opcode kMulDiv[8] = {
          Opcode::Mul,  Opcode::Mulh, Opcode::Mulhsu, Opcode::Mulhu,
          Opcode::Div,  Opcode::Divu, Opcode::Rem,    Opcode::Remu};
      d.rd = rd;
      d.rs1 = rs1;
      d.rs2 = rs2;
      if (f7 == 0x00) { d.op = kBase[f3]; return d; }
      if (f7 == 0x01) { d.op = kMulDiv[f3]; return d; }
      if (f7 == 0x20 && f3 == 0) { d.op = Opcode::Sub; return d; }
      if (f7 == 0x20 && f3 == 5) { d.op = Opcode::Sra; return d; }
      d.rd = d.rs1 = d.rs2 = 0;
      break;
    }

    case kOpcMiscMem:
      if (f3 != 0) break;
      d.op = Opcode::Fence;  // ordering hints are irrelevant to this model
      return d;

    case kOpcSystem:
      switch (f3) {
        case 0:
          if (w == 0x00000073u) { d.op = Opcode::Ecall; return d; }
          if (w == 0x00100073u) { d.op = Opcode::Ebreak; return d; }
          break;
        case 1: d.op = Opcode::Csrrw; break;
        case 2: d.op = Opcode::Csrrs; break;
        case 3: d.op = Opcode::Csrrc; break;
        case 5: d.op = Opcode::Csrrwi; break;
        case 6: d.op = Opcode::Csrrsi; break;
        case 7: d.op = Opcode::Csrrci; break;
        default: break;
      }
      if (d.op != Opcode::Illegal) {
        d.rd = rd;
        d.rs1 = rs1;  // zimm for the immediate forms
        d.csr = static_cast<uint16_t>(w >> 20);
      }
      return d;

    default:
      break;
  }
  return DecodedInstr{};
}

uint32_t encode(const DecodedInstr& d) {
  switch (d.op) {
    case Opcode::Lui: return u_type(d, kOpcLui);
    case Opcode::Auipc: return u_type(d, kOpcAuipc);
    case Opcode::Jal: return j_type(d);
    case Opcode::Jalr: return i_type(d, 0, kOpcJalr);

    case Opcode::Beq: return b_type(d, 0);
    case Opcode::Bne: return b_type(d, 1);
    case Opcode::Blt: return b_type(d, 4);
    case Opcode::Bge: return b_type(d, 5);
    case Opcode::Bltu: return b_type(d, 6);
    case Opcode::Bgeu: return b_type(d, 7);

    case Opcode::Lb: return i_type(d, 0, kOpcLoad);
    case Opcode::Lh: return i_type(d, 1, kOpcLoad);
    case Opcode::Lw: return i_type(d, 2, kOpcLoad);
    case Opcode::Lbu: return i_type(d, 4, kOpcLoad);
    case Opcode::Lhu: return i_type(d, 5, kOpcLoad);
    case Opcode::Sb: return s_type(d, 0);
    case Opcode::Sh: return s_type(d, 1);
    case Opcode::Sw: return s_type(d, 2);

    case Opcode::Addi: return i_type(d, 0, kOpcOpImm);
    case Opcode::Slti: return i_type(d, 2, kOpcOpImm);
    case Opcode::Sltiu: return i_type(d, 3, kOpcOpImm);
    case Opcode::Xori: return i_type(d, 4, kOpcOpImm);
    case Opcode::Ori: return i_type(d, 6, kOpcOpImm);
    case Opcode::Andi: return i_type(d, 7, kOpcOpImm);
    case Opcode::Slli: return shift_type(0x00, d, 1);
    case Opcode::Srli: return shift_type(0x00, d, 5);
    case Opcode::Srai: return shift_type(0x20, d, 5);

    case Opcode::Add: return r_type(0x00, d, 0, kOpcOp);
    case Opcode::Sub: return r_type(0x20, d, 0, kOpcOp);
    case Opcode::Sll: return r_type(0x00, d, 1, kOpcOp);
    case Opcode::Slt: return r_type(0x00, d, 2, kOpcOp);
    case Opcode::Sltu: return r_type(0x00, d, 3, kOpcOp);
    case Opcode::Xor: return r_type(0x00, d, 4, kOpcOp);
    case Opcode::Srl: return r_type(0x00, d, 5, kOpcOp);
    case Opcode::Sra: return r_type(0x20, d, 5, kOpcOp);
    case Opcode::Or: return r_type(0x00, d, 6, kOpcOp);
    case Opcode::And: return r_type(0x00, d, 7, kOpcOp);

    case Opcode::Mul: return r_type(0x01, d, 0, kOpcOp);
    case Opcode::Mulh: return r_type(0x01, d, 1, kOpcOp);
    case Opcode::Mulhsu: return r_type(0x01, d, 2, kOpcOp);
    case Opcode::Mulhu: return r_type(0x01, d, 3, kOpcOp);
    case Opcode::Div: return r_type(0x01, d, 4, kOpcOp);
    case Opcode::Divu: return r_type(0x01, d, 5, kOpcOp);
    case Opcode::Rem: return r_type(0x01, d, 6, kOpcOp);
    case Opcode::Remu: return r_type(0x01, d, 7, kOpcOp);

    case Opcode::Fence: return 0x0FF0000Fu;  // fence iorw,iorw
    case Opcode::Ecall: return 0x00000073u;
    case Opcode::Ebreak: return 0x00100073u;

    case Opcode::Csrrw: return csr_type(d, 1);
    case Opcode::Csrrs: return csr_type(d, 2);
    case Opcode::Csrrc: return csr_type(d, 3);
    case Opcode::Csrrwi: return csr_type(d, 5);
    case Opcode::Csrrsi: return csr_type(d, 6);
    case Opcode::Csrrci: return csr_type(d, 7);

    case Opcode::Illegal: break;
  }
  bad("cannot encode an illegal instruction");
}

std::string to_string(const DecodedInstr& d) {
  char buf[96];
  const char* name = mnemonic(d.op);
  if (is_csr(d.op)) {
    std::snprintf(buf, sizeof buf, "%s x%u, 0x%03x, %s%u", name, d.rd, d.csr,
                  d.op >= Opcode::Csrrwi ? "" : "x", d.rs1);
  } else if (is_branch(d.op) || is_store(d.op)) {
    std::snprintf(buf, sizeof buf, "%s x%u, x%u, %d", name, d.rs1, d.rs2,
                  d.imm);
  } else if (is_load(d.op) || d.op == Opcode::Jalr) {
    std::snprintf(buf, sizeof buf, "%s x%u, %d(x%u)", name, d.rd, d.imm,
                  d.rs1);
  } else if (d.op == Opcode::Lui || d.op == Opcode::Auipc ||
             d.op == Opcode::Jal) {
    std::snprintf(buf, sizeof buf, "%s x%u, %d", name, d.rd, d.imm);
  } else if (d.op == Opcode::Fence || d.op == Opcode::Ecall ||
             d.op == Opcode::Ebreak || d.op == Opcode::Illegal) {
    std::snprintf(buf, sizeof buf, "%s", name);
  } else if (d.op >= Opcode::Addi && d.op <= Opcode::Srai) {
    std::snprintf(buf, sizeof buf, "%s x%u, x%u, %d", name, d.rd, d.rs1,
                  d.imm);
  } else {
    std::snprintf(buf, sizeof buf, "%s x%u, x%u, x%u", name, d.rd, d.rs1,
                  d.rs2);
  }
  return buf;
}

void ProgramBuilder::push(const DecodedInstr& ins, std::string target) {
  items_.push_back(Item{ins, std::move(target)});
}

void ProgramBuilder::lui(unsigned rd, uint32_t imm) {
  push({Opcode::Lui, static_cast<uint8_t>(rd), 0, 0,
        static_cast<int32_t>(imm), 0});
}
void ProgramBuilder::auipc(unsigned rd, uint32_t imm) {
  push({Opcode::Auipc, static_cast<uint8_t>(rd), 0, 0,
        static_cast<int32_t>(imm), 0});
}
void ProgramBuilder::jal(unsigned rd, const std::string& target) {
  push({Opcode::Jal, static_cast<uint8_t>(rd), 0, 0, 0, 0}, target);
}
void ProgramBuilder::jalr(unsigned rd, unsigned rs1, int32_t imm) {
  push({Opcode::Jalr, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1), 0,
        imm, 0});
}

#define AXRV_BRANCH(NAME, OP)                                               \
  void ProgramBuilder::NAME(unsigned rs1, unsigned rs2,                    \
                            const std::string& target) {                   \
    push({Opcode::OP, 0, static_cast<uint8_t>(rs1),                        \
          static_cast<uint8_t>(rs2), 0, 0},                                \
         target);                                                          \
  }
AXRV_BRANCH(beq, Beq)
AXRV_BRANCH(bne, Bne)
AXRV_BRANCH(blt, Blt)
AXRV_BRANCH(bge, Bge)
AXRV_BRANCH(bltu, Bltu)
AXRV_BRANCH(bgeu, Bgeu)
#undef AXRV_BRANCH

#define AXRV_LOAD(NAME, OP)                                                \
  void ProgramBuilder::NAME(unsigned rd, unsigned rs1, int32_t imm) {      \
    push({Opcode::OP, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1), \
          0, imm, 0});                                                     \
  }
AXRV_LOAD(lb, Lb)
AXRV_LOAD(lh, Lh)
AXRV_LOAD(lw, Lw)
AXRV_LOAD(lbu, Lbu)
AXRV_LOAD(lhu, Lhu)
#undef AXRV_LOAD

#define AXRV_STORE(NAME, OP)                                               \
  void ProgramBuilder::NAME(unsigned rs2, unsigned rs1, int32_t imm) {     \
    push({Opcode::OP, 0, static_cast<uint8_t>(rs1),                        \
          static_cast<uint8_t>(rs2), imm, 0});                             \
  }
AXRV_STORE(sb, Sb)
AXRV_STORE(sh, Sh)
AXRV_STORE(sw, Sw)
#undef AXRV_STORE

#define AXRV_OPIMM(NAME, OP)                                               \
  void ProgramBuilder::NAME(unsigned rd, unsigned rs1, int32_t imm) {      \
    push({Opcode::OP, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1), \
          0, imm, 0});                                                     \
  }
AXRV_OPIMM(addi, Addi)
AXRV_OPIMM(slti, Slti)
AXRV_OPIMM(sltiu, Sltiu)
AXRV_OPIMM(xori, Xori)
AXRV_OPIMM(ori, Ori)
AXRV_OPIMM(andi, Andi)
#undef AXRV_OPIMM

#define AXRV_SHIFT(NAME, OP)                                               \
  void ProgramBuilder::NAME(unsigned rd, unsigned rs1, unsigned shamt) {   \
    push({Opcode::OP, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1), \
          0, static_cast<int32_t>(shamt), 0});                             \
  }
AXRV_SHIFT(slli, Slli)
AXRV_SHIFT(srli, Srli)
AXRV_SHIFT(srai, Srai)
#undef AXRV_SHIFT

#define AXRV_RTYPE(NAME, OP)                                               \
  void ProgramBuilder::NAME(unsigned rd, unsigned rs1, unsigned rs2) {     \
    push({Opcode::OP, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1), \
          static_cast<uint8_t>(rs2), 0, 0});                               \
  }
AXRV_RTYPE(add, Add)
AXRV_RTYPE(sub, Sub)
AXRV_RTYPE(sll, Sll)
AXRV_RTYPE(slt, Slt)
AXRV_RTYPE(sltu, Sltu)
AXRV_RTYPE(xor_, Xor)
AXRV_RTYPE(srl, Srl)
AXRV_RTYPE(sra, Sra)
AXRV_RTYPE(or_, Or)
AXRV_RTYPE(and_, And)
AXRV_RTYPE(mul, Mul)
AXRV_RTYPE(mulh, Mulh)
AXRV_RTYPE(mulhsu, Mulhsu)
AXRV_RTYPE(mulhu, Mulhu)
AXRV_RTYPE(div, Div)
AXRV_RTYPE(divu, Divu)
AXRV_RTYPE(rem, Rem)
AXRV_RTYPE(remu, Remu)
#undef AXRV_RTYPE

void ProgramBuilder::fence() { push({Opcode::Fence, 0, 0, 0, 0, 0}); }
void ProgramBuilder::ecall() { push({Opcode::Ecall, 0, 0, 0, 0, 0}); }
void ProgramBuilder::ebreak() { push({Opcode::Ebreak, 0, 0, 0, 0, 0}); }

#define AXRV_CSR(NAME, OP)                                                  \
  void ProgramBuilder::NAME(unsigned rd, uint16_t csr, unsigned src) {      \
    push({Opcode::OP, static_cast<uint8_t>(rd), static_cast<uint8_t>(src),  \
          0, 0, csr});                                                      \
  }
AXRV_CSR(csrrw, Csrrw)
AXRV_CSR(csrrs, Csrrs)
AXRV_CSR(csrrc, Csrrc)
AXRV_CSR(csrrwi, Csrrwi)
AXRV_CSR(csrrsi, Csrrsi)
AXRV_CSR(csrrci, Csrrci)
#undef AXRV_CSR

void ProgramBuilder::nop() { addi(reg::zero, reg::zero, 0); }

void ProgramBuilder::li(unsigned rd, int32_t value) {
  if (value >= -2048 && value <= 2047) {
    addi(rd, reg::zero, value);
    return;
  }
  const uint32_t u = static_cast<uint32_t>(value);
  const uint32_t hi = (u + 0x800u) & 0xFFFFF000u;
  const int32_t lo = sext(u & 0xFFFu, 12);
  lui(rd, hi);
  if (lo != 0) addi(rd, rd, lo);
}

void ProgramBuilder::mv(unsigned rd, unsigned rs) { addi(rd, rs, 0); }
void ProgramBuilder::j(const std::string& target) { jal(reg::zero, target); }

void ProgramBuilder::label(const std::string& name) {
  if (!labels_.emplace(name, items_.size()).second)
    throw std::invalid_argument("duplicate label: " + name);
}

std::vector<uint32_t> ProgramBuilder::build() const {
  std::vector<uint32_t> words;
  words.reserve(items_.size());
  for (size_t i = 0; i < items_.size(); ++i) {
    DecodedInstr ins = items_[i].ins;
    if (!items_[i].target.empty()) {
      auto it = labels_.find(items_[i].target);
      if (it == labels_.end())
        throw std::invalid_argument("unknown label: " + items_[i].target);
      ins.imm = static_cast<int32_t>(it->second - i) * 4;
    }
    words.push_back(encode(ins));
  }
  return words;
}

}  // namespace axrv
