#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace axrv {

// The instruction subset the simulator executes and the program builder
// emits: RV32I base, M extension, Zicsr, plus FENCE as a no-op.
enum class Opcode : uint8_t {
  Lui,
  Auipc,
  Jal,
  Jalr,
  Beq,
  Bne,
  Blt,
  Bge,
  Bltu,
  Bgeu,
  Lb,
  Lh,
  Lw,
  Lbu,
  Lhu,
  Sb,
  Sh,
  Sw,
  Addi,
  Slti,
  Sltiu,
  Xori,
  Ori,
  Andi,
  Slli,
  Srli,
  Srai,
  Add,
  Sub,
  Sll,
  Slt,
  Sltu,
  Xor,
  Srl,
  Sra,
  Or,
  And,
  Fence,
  Ecall,
  Ebreak,
  Csrrw,
  Csrrs,
  Csrrc,
  Csrrwi,
  Csrrsi,
  Csrrci,
  Mul,
  Mulh,
  Mulhsu,
  Mulhu,
  Div,
  Divu,
  Rem,
  Remu,
  Illegal,
};

const char* mnemonic(Opcode op);

bool is_load(Opcode op);
bool is_store(Opcode op);
bool is_branch(Opcode op);
bool is_jump(Opcode op);  // JAL / JALR
bool is_mul(Opcode op);   // MUL / MULH / MULHSU / MULHU
bool is_div(Opcode op);   // DIV / DIVU / REM / REMU
bool is_csr(Opcode op);

// Decoded form of one instruction word.  Fields not used by the opcode are
// canonically zero, so value equality is meaningful and decode(encode(x))
// round-trips.  Conventions:
//   - imm holds the sign-extended immediate; for LUI/AUIPC the full
//     low-12-bits-clear value; for shift-immediates the shamt.
//   - rs1 holds the 5-bit zero-extended immediate of CSRRWI/CSRRSI/CSRRCI.
//   - csr holds the CSR address for Zicsr opcodes.
struct DecodedInstr {
  Opcode op = Opcode::Illegal;
  uint8_t rd = 0;
  uint8_t rs1 = 0;
  uint8_t rs2 = 0;
  int32_t imm = 0;
  uint16_t csr = 0;

  friend bool operator==(const DecodedInstr&, const DecodedInstr&) = default;
};

// Total function: never throws, unrecognized words come back as Illegal.
DecodedInstr decode(uint32_t word);

// Inverse of decode for every valid DecodedInstr.  Throws
// std::invalid_argument on out-of-range registers, immediates, shift
// amounts, or CSR addresses, and when asked to encode Illegal.
uint32_t encode(const DecodedInstr& ins);

std::string to_string(const DecodedInstr& ins);

// Conventional ABI register numbers, so builder code reads like assembly.
namespace reg {
inline constexpr unsigned zero = 0, ra = 1, sp = 2, gp = 3, tp = 4;
inline constexpr unsigned t0 = 5, t1 = 6, t2 = 7;
inline constexpr unsigned s0 = 8, s1 = 9;
inline constexpr unsigned a0 = 10, a1 = 11, a2 = 12, a3 = 13, a4 = 14,
                          a5 = 15, a6 = 16, a7 = 17;
inline constexpr unsigned s2 = 18, s3 = 19, s4 = 20, s5 = 21, s6 = 22,
                          s7 = 23, s8 = 24, s9 = 25, s10 = 26, s11 = 27;
inline constexpr unsigned t3 = 28, t4 = 29, t5 = 30, t6 = 31;
}  // namespace reg

// Assembles small test/benchmark programs: one method per mnemonic plus
// labels for control flow and a handful of standard pseudo-instructions.
// Branch targets are labels; offsets are resolved by build().
class ProgramBuilder {
 public:
  // rd <- imm (low 12 bits of imm must be zero, as in the U-type format)
  void lui(unsigned rd, uint32_t imm);
  void auipc(unsigned rd, uint32_t imm);

  void jal(unsigned rd, const std::string& target);
  void jalr(unsigned rd, unsigned rs1, int32_t imm);

  void beq(unsigned rs1, unsigned rs2, const std::string& target);
  void bne(unsigned rs1, unsigned rs2, const std::string& target);
  void blt(unsigned rs1, unsigned rs2, const std::string& target);
  void bge(unsigned rs1, unsigned rs2, const std::string& target);
  void bltu(unsigned rs1, unsigned rs2, const std::string& target);
  void bgeu(unsigned rs1, unsigned rs2, const std::string& target);

  // rd <- mem[rs1 + imm]
  void lb(unsigned rd, unsigned rs1, int32_t imm);
  void lh(unsigned rd, unsigned rs1, int32_t imm);
  void lw(unsigned rd, unsigned rs1, int32_t imm);
  void lbu(unsigned rd, unsigned rs1, int32_t imm);
  void lhu(unsigned rd, unsigned rs1, int32_t imm);
  // mem[rs1 + imm] <- rs2
  void sb(unsigned rs2, unsigned rs1, int32_t imm);
  void sh(unsigned rs2, unsigned rs1, int32_t imm);
  void sw(unsigned rs2, unsigned rs1, int32_t imm);

  void addi(unsigned rd, unsigned rs1, int32_t imm);
  void slti(unsigned rd, unsigned rs1, int32_t imm);
  void sltiu(unsigned rd, unsigned rs1, int32_t imm);
  void xori(unsigned rd, unsigned rs1, int32_t imm);
  void ori(unsigned rd, unsigned rs1, int32_t imm);
  void andi(unsigned rd, unsigned rs1, int32_t imm);
  void slli(unsigned rd, unsigned rs1, unsigned shamt);
  void srli(unsigned rd, unsigned rs1, unsigned shamt);
  void srai(unsigned rd, unsigned rs1, unsigned shamt);

  void add(unsigned rd, unsigned rs1, unsigned rs2);
  void sub(unsigned rd, unsigned rs1, unsigned rs2);
  void sll(unsigned rd, unsigned rs1, unsigned rs2);
  void slt(unsigned rd, unsigned rs1, unsigned rs2);
  void sltu(unsigned rd, unsigned rs1, unsigned rs2);
  void xor_(unsigned rd, unsigned rs1, unsigned rs2);
  void srl(unsigned rd, unsigned rs1, unsigned rs2);
  void sra(unsigned rd, unsigned rs1, unsigned rs2);
  void or_(unsigned rd, unsigned rs1, unsigned rs2);
  void and_(unsigned rd, unsigned rs1, unsigned rs2);

  void mul(unsigned rd, unsigned rs1, unsigned rs2);
  void mulh(unsigned rd, unsigned rs1, unsigned rs2);
  void mulhsu(unsigned rd, unsigned rs1, unsigned rs2);
  void mulhu(unsigned rd, unsigned rs1, unsigned rs2);
  void div(unsigned rd, unsigned rs1, unsigned rs2);
  void divu(unsigned rd, unsigned rs1, unsigned rs2);
  void rem(unsigned rd, unsigned rs1, unsigned rs2);
  void remu(unsigned rd, unsigned rs1, unsigned rs2);

  void fence();
  void ecall();
  void ebreak();

  void csrrw(unsigned rd, uint16_t csr, unsigned rs1);
  void csrrs(unsigned rd, uint16_t csr, unsigned rs1);
  void csrrc(unsigned rd, uint16_t csr, unsigned rs1);
  void csrrwi(unsigned rd, uint16_t csr, unsigned zimm);
  void csrrsi(unsigned rd, uint16_t csr, unsigned zimm);
  void csrrci(unsigned rd, uint16_t csr, unsigned zimm);

  // Pseudo-instructions.
  void nop();                        // addi x0, x0, 0
  void li(unsigned rd, int32_t value);  // lui+addi as needed
  void mv(unsigned rd, unsigned rs);    // addi rd, rs, 0
  void j(const std::string& target);    // jal x0, target

  // Marks the position of the next emitted instruction.  Throws
  // std::invalid_argument on duplicates.
  void label(const std::string& name);

  size_t size() const { return items_.size(); }

  // Resolves label references and encodes.  Throws std::invalid_argument on
  // unknown labels or unencodable (out-of-range) branch offsets.
  std::vector<uint32_t> build() const;

 private:
  struct Item {
    DecodedInstr ins;
    std::string target;  // empty unless a pending branch/jump fixup
  };

  void push(const DecodedInstr& ins, std::string target = {});

  std::vector<Item> items_;
  std::unordered_map<std::string, size_t> labels_;
};

}  // namespace axrv
