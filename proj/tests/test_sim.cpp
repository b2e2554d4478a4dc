#include "axrv/sim.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "json.hpp"

namespace axrv {
namespace {

constexpr size_t kSmallMem = 64 * 1024;

SimOptions small_options() {
  SimOptions o;
  o.memory_bytes = kSmallMem;
  return o;
}

// Executes a single register-register instruction on fresh state.
uint32_t exec_rr(Opcode op, uint32_t a, uint32_t b,
                 SimOptions options = small_options(), uint32_t mulcsr = 0) {
  Simulator sim(options);
  sim.state().csrs[kMulCsrAddr] = mulcsr;
  sim.state().regs[5] = a;
  sim.state().regs[6] = b;
  sim.load_words(0, {encode({op, 7, 5, 6, 0, 0})});
  sim.step();
  EXPECT_FALSE(sim.state().halted) << mnemonic(op);
  return sim.state().regs[7];
}

uint32_t exec_imm(Opcode op, uint32_t a, int32_t imm) {
  Simulator sim(small_options());
  sim.state().regs[5] = a;
  sim.load_words(0, {encode({op, 7, 5, 0, imm, 0})});
  sim.step();
  EXPECT_FALSE(sim.state().halted) << mnemonic(op);
  return sim.state().regs[7];
}

// Independent word-level reference semantics, written directly against the
// ISA definition rather than the simulator's code paths.
uint32_t oracle_rr(Opcode op, uint32_t a, uint32_t b) {
  const int32_t sa = static_cast<int32_t>(a);
  const int32_t sb = static_cast<int32_t>(b);
  const int64_t wa = sa, wb = sb;
  switch (op) {
    case Opcode::Add: return a + b;
    case Opcode::Sub: return a - b;
    case Opcode::Sll: return a << (b & 31);
    case Opcode::Slt: return sa < sb ? 1 : 0;
    case Opcode::Sltu: return a < b ? 1 : 0;
    case Opcode::Xor: return a ^ b;
    case Opcode::Srl: return a >> (b & 31);
    case Opcode::Sra: return static_cast<uint32_t>(sa >> (b & 31));
    case Opcode::Or: return a | b;
    case Opcode::And: return a & b;
    case Opcode::Mul:
      return static_cast<uint32_t>(static_cast<uint64_t>(a) * b);
    case Opcode::Mulh:
      return static_cast<uint32_t>(static_cast<uint64_t>(wa * wb) >> 32);
    case Opcode::Mulhsu:
      return static_cast<uint32_t>(
          static_cast<uint64_t>(wa * static_cast<int64_t>(b)) >> 32);
    case Opcode::Mulhu:
      return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) >> 32);
    case Opcode::Div:
      if (b == 0) return 0xFFFFFFFFu;
      if (sa == std::numeric_limits<int32_t>::min() && sb == -1) return a;
      return static_cast<uint32_t>(sa / sb);
    case Opcode::Divu: return b == 0 ? 0xFFFFFFFFu : a / b;
    case Opcode::Rem:
      if (b == 0) return a;
      if (sa == std::numeric_limits<int32_t>::min() && sb == -1) return 0;
      return static_cast<uint32_t>(sa % sb);
    case Opcode::Remu: return b == 0 ? a : a % b;
    default: ADD_FAILURE(); return 0;
  }
}

bool oracle_branch(Opcode op, uint32_t a, uint32_t b) {
  const int32_t sa = static_cast<int32_t>(a);
  const int32_t sb = static_cast<int32_t>(b);
  switch (op) {
    case Opcode::Beq: return a == b;
    case Opcode::Bne: return a != b;
    case Opcode::Blt: return sa < sb;
    case Opcode::Bge: return sa >= sb;
    case Opcode::Bltu: return a < b;
    case Opcode::Bgeu: return a >= b;
    default: ADD_FAILURE(); return false;
  }
}

TEST(Memory, LittleEndianAndBounds) {
  Memory m(16);
  m.store32(0, 0x11223344u);
  EXPECT_EQ(m.load8(0), 0x44u);
  EXPECT_EQ(m.load8(3), 0x11u);
  EXPECT_EQ(m.load16(1), 0x2233u);  // misaligned access is fine
  m.store16(9, 0xBEEF);
  EXPECT_EQ(m.load32(8), (m.load8(11) << 24 | m.load8(10) << 16 | 0xBEEF00u | m.load8(8)));
  EXPECT_TRUE(m.in_bounds(12, 4));
  EXPECT_FALSE(m.in_bounds(13, 4));
  EXPECT_FALSE(m.in_bounds(0xFFFFFFFFu, 4));  // no wraparound
  EXPECT_THROW(m.load32(13), std::out_of_range);
  EXPECT_THROW(m.store8(16, 1), std::out_of_range);
}

TEST(Step, DirectedAluSamples) {
  EXPECT_EQ(exec_rr(Opcode::Add, 2, 3), 5u);
  EXPECT_EQ(exec_rr(Opcode::Sub, 2, 3), 0xFFFFFFFFu);
  EXPECT_EQ(exec_rr(Opcode::Sll, 1, 33), 2u);  // shift amount masked to 5 bits
  EXPECT_EQ(exec_rr(Opcode::Sra, 0x80000000u, 31), 0xFFFFFFFFu);
  EXPECT_EQ(exec_rr(Opcode::Slt, 0xFFFFFFFFu, 0), 1u);   // -1 < 0
  EXPECT_EQ(exec_rr(Opcode::Sltu, 0xFFFFFFFFu, 0), 0u);  // unsigned max
  EXPECT_EQ(exec_imm(Opcode::Addi, 10, -3), 7u);
  EXPECT_EQ(exec_imm(Opcode::Xori, 0xFF00u, -1), 0xFFFF00FFu);
  EXPECT_EQ(exec_imm(Opcode::Sltiu, 5, -1), 1u);  // imm sign-extends then compares unsigned
  EXPECT_EQ(exec_imm(Opcode::Srai, 0x80000000u, 4), 0xF8000000u);
}

TEST(Step, RandomizedAluDifferential) {
  const Opcode rr_ops[] = {Opcode::Add, Opcode::Sub, Opcode::Sll,
                           Opcode::Slt, Opcode::Sltu, Opcode::Xor,
                           Opcode::Srl, Opcode::Sra, Opcode::Or, Opcode::And};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const Opcode op = rr_ops[rng() % std::size(rr_ops)];
    const uint32_t a = static_cast<uint32_t>(rng());
    const uint32_t b = static_cast<uint32_t>(rng());
    ASSERT_EQ(exec_rr(op, a, b), oracle_rr(op, a, b))
        << mnemonic(op) << " a=" << a << " b=" << b;
  }
}

TEST(Step, RandomizedMulDivDifferential) {
  const Opcode ops[] = {Opcode::Mul, Opcode::Mulh, Opcode::Mulhsu,
                        Opcode::Mulhu, Opcode::Div, Opcode::Divu,
                        Opcode::Rem, Opcode::Remu};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 4000; ++i) {
    const Opcode op = ops[rng() % std::size(ops)];
    const uint32_t a = static_cast<uint32_t>(rng());
    const uint32_t b = static_cast<uint32_t>(rng());
    ASSERT_EQ(exec_rr(op, a, b), oracle_rr(op, a, b))
        << mnemonic(op) << " a=" << a << " b=" << b;
  }
}

TEST(Step, DivRemCornerCases) {
  const int32_t int_min = std::numeric_limits<int32_t>::min();
  EXPECT_EQ(exec_rr(Opcode::Div, 17, 0), 0xFFFFFFFFu);
  EXPECT_EQ(exec_rr(Opcode::Divu, 17, 0), 0xFFFFFFFFu);
  EXPECT_EQ(exec_rr(Opcode::Rem, 17, 0), 17u);
  EXPECT_EQ(exec_rr(Opcode::Remu, 17, 0), 17u);
  EXPECT_EQ(exec_rr(Opcode::Div, static_cast<uint32_t>(int_min), 0xFFFFFFFFu),
            static_cast<uint32_t>(int_min));
  EXPECT_EQ(exec_rr(Opcode::Rem, static_cast<uint32_t>(int_min), 0xFFFFFFFFu),
            0u);
  EXPECT_EQ(exec_rr(Opcode::Div, 0xFFFFFFF9u, 2), 0xFFFFFFFDu);  // -7/2 = -3
  EXPECT_EQ(exec_rr(Opcode::Rem, 0xFFFFFFF9u, 2), 0xFFFFFFFFu);  // -7%2 = -1
}

TEST(Step, MulRoutesThroughConfiguredMultiplier) {
  // CSR=0 disables approximation: exact low word even for the SSM unit.
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const uint32_t a = static_cast<uint32_t>(rng());
    const uint32_t b = static_cast<uint32_t>(rng());
    ASSERT_EQ(exec_rr(Opcode::Mul, a, b, small_options(), 0),
              oracle_rr(Opcode::Mul, a, b));
  }
  // Maximum approximation makes small nonzero errors possible; the 8-bit
  // one-sided property lifts to "configured >= exact" for small operands.
  SimOptions dfm = small_options();
  dfm.mul_unit = CompressorKind::Dfc;
  uint64_t mismatches = 0;
  for (int i = 0; i < 300; ++i) {
    const uint32_t a = rng() & 0xFFFF;
    const uint32_t b = rng() & 0xFFFF;
    if (exec_rr(Opcode::Mul, a, b, dfm, 0x1) != a * b) ++mismatches;
  }
  EXPECT_GT(mismatches, 0u);
}

TEST(Step, BranchesMatchOracle) {
  const Opcode ops[] = {Opcode::Beq, Opcode::Bne, Opcode::Blt,
                        Opcode::Bge, Opcode::Bltu, Opcode::Bgeu};
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5000; ++i) {
    const Opcode op = ops[rng() % std::size(ops)];
    uint32_t a = static_cast<uint32_t>(rng());
    uint32_t b = (rng() & 1) ? a : static_cast<uint32_t>(rng());
    Simulator sim(small_options());
    sim.state().regs[5] = a;
    sim.state().regs[6] = b;
    sim.set_pc(64);
    sim.memory().store32(64, encode({op, 0, 5, 6, 16, 0}));
    sim.step();
    const uint32_t want = oracle_branch(op, a, b) ? 80u : 68u;
    ASSERT_EQ(sim.state().pc, want) << mnemonic(op) << " a=" << a << " b=" << b;
  }
}

TEST(Step, LoadsAndStoresAllWidths) {
  Simulator sim(small_options());
  sim.state().regs[5] = 0x100;  // base
  sim.state().regs[6] = 0xDEADBEEFu;
  const std::vector<uint32_t> prog = {
      encode({Opcode::Sw, 0, 5, 6, 0, 0}),  // mem[0x100] = 0xDEADBEEF
      encode({Opcode::Sh, 0, 5, 6, 6, 0}),  // mem[0x106] = 0xBEEF
      encode({Opcode::Sb, 0, 5, 6, 9, 0}),  // mem[0x109] = 0xEF
      encode({Opcode::Lw, 7, 5, 0, 0, 0}),
      encode({Opcode::Lh, 8, 5, 0, 0, 0}),    // 0xBEEF sign-extends
      encode({Opcode::Lhu, 9, 5, 0, 0, 0}),
      encode({Opcode::Lb, 10, 5, 0, 3, 0}),   // 0xDE sign-extends
      encode({Opcode::Lbu, 11, 5, 0, 3, 0}),
      encode({Opcode::Lhu, 12, 5, 0, 6, 0}),
      encode({Opcode::Lbu, 13, 5, 0, 9, 0}),
      encode({Opcode::Lhu, 14, 5, 0, 1, 0}),  // misaligned halfword
  };
  sim.load_words(0, prog);
  for (size_t i = 0; i < prog.size(); ++i) sim.step();
  ASSERT_FALSE(sim.state().halted) << sim.diagnostic();
  EXPECT_EQ(sim.state().regs[7], 0xDEADBEEFu);
  EXPECT_EQ(sim.state().regs[8], 0xFFFFBEEFu);
  EXPECT_EQ(sim.state().regs[9], 0x0000BEEFu);
  EXPECT_EQ(sim.state().regs[10], 0xFFFFFFDEu);
  EXPECT_EQ(sim.state().regs[11], 0x000000DEu);
  EXPECT_EQ(sim.state().regs[12], 0x0000BEEFu);
  EXPECT_EQ(sim.state().regs[13], 0x000000EFu);
  EXPECT_EQ(sim.state().regs[14], 0x0000ADBEu);
}

TEST(Step, UpperImmediatesAndJumps) {
  Simulator sim(small_options());
  sim.set_pc(0x40);
  sim.load_words(0x40, {
      encode({Opcode::Lui, 5, 0, 0, 0x12345000, 0}),
      encode({Opcode::Auipc, 6, 0, 0, 0x1000, 0}),   // pc = 0x44
      encode({Opcode::Jal, 1, 0, 0, 12, 0}),         // pc = 0x48 -> 0x54
  });
  sim.load_words(0x54, {encode({Opcode::Jalr, 7, 1, 0, 5, 0})});
  sim.step();
  sim.step();
  sim.step();
  EXPECT_EQ(sim.state().regs[5], 0x12345000u);
  EXPECT_EQ(sim.state().regs[6], 0x1044u);
  EXPECT_EQ(sim.state().regs[1], 0x4Cu);  // link
  EXPECT_EQ(sim.state().pc, 0x54u);
  sim.step();  // jalr x7, 5(x1) -> (0x4C + 5) & ~1 = 0x50
  EXPECT_EQ(sim.state().regs[7], 0x58u);
  EXPECT_EQ(sim.state().pc, 0x50u);  // low bit cleared
}

TEST(Step, X0StaysZero) {
  Simulator sim(small_options());
  sim.state().regs[5] = 7;
  sim.load_words(0, {
      encode({Opcode::Addi, 0, 5, 1, 0}),
      encode({Opcode::Lui, 0, 0, 0, 0x7000, 0}),
  });
  sim.step();
  sim.step();
  EXPECT_EQ(sim.state().regs[0], 0u);
  EXPECT_FALSE(sim.state().halted);
}

TEST(Csr, ReadWriteSetClearSemantics) {
  Simulator sim(small_options());
  sim.state().regs[5] = 0xF0;
  sim.state().regs[6] = 0x0F;
  sim.load_words(0, {
      encode({Opcode::Csrrw, 7, 5, 0, 0, kAluCsrAddr}),   // old 0 -> x7, csr=0xF0
      encode({Opcode::Csrrs, 8, 6, 0, 0, kAluCsrAddr}),   // old 0xF0, csr=0xFF
      encode({Opcode::Csrrc, 9, 5, 0, 0, kAluCsrAddr}),   // old 0xFF, csr=0x0F
      encode({Opcode::Csrrwi, 10, 3, 0, 0, kDivCsrAddr}), // zimm=3
      encode({Opcode::Csrrsi, 11, 4, 0, 0, kDivCsrAddr}), // old 3, csr=7
      encode({Opcode::Csrrci, 12, 1, 0, 0, kDivCsrAddr}), // old 7, csr=6
  });
  for (int i = 0; i < 6; ++i) sim.step();
  ASSERT_FALSE(sim.state().halted) << sim.diagnostic();
  EXPECT_EQ(sim.state().regs[7], 0u);
  EXPECT_EQ(sim.state().regs[8], 0xF0u);
  EXPECT_EQ(sim.state().regs[9], 0xFFu);
  EXPECT_EQ(sim.state().csrs[kAluCsrAddr], 0x0Fu);
  EXPECT_EQ(sim.state().regs[10], 0u);
  EXPECT_EQ(sim.state().regs[11], 3u);
  EXPECT_EQ(sim.state().regs[12], 7u);
  EXPECT_EQ(sim.state().csrs[kDivCsrAddr], 6u);
}

TEST(Csr, CountersReadableAndWriteProtected) {
  Simulator sim(small_options());
  sim.load_words(0, {
      encode({Opcode::Addi, 5, 0, 0, 1, 0}),
      encode({Opcode::Mul, 6, 5, 5, 0, 0}),              // 4 cycles
      encode({Opcode::Csrrs, 7, 0, 0, 0, kInstretCsrAddr}),  // rs1=x0: pure read
      encode({Opcode::Csrrs, 8, 0, 0, 0, kCycleCsrAddr}),
      encode({Opcode::Csrrs, 9, 0, 0, 0, kCyclehCsrAddr}),
      encode({Opcode::Csrrs, 10, 0, 0, 0, kInstrethCsrAddr}),
  });
  for (int i = 0; i < 6; ++i) sim.step();
  ASSERT_FALSE(sim.state().halted) << sim.diagnostic();
  EXPECT_EQ(sim.state().regs[7], 2u);  // two instructions retired before it
  EXPECT_EQ(sim.state().regs[8], 6u);  // addi(1) + mul(4) + csrrs(1)
  EXPECT_EQ(sim.state().regs[9], 0u);
  EXPECT_EQ(sim.state().regs[10], 0u);

  // Writing a counter is an illegal instruction.
  Simulator sim2(small_options());
  sim2.state().regs[5] = 1;
  sim2.load_words(0, {encode({Opcode::Csrrw, 0, 5, 0, 0, kCycleCsrAddr})});
  sim2.step();
  EXPECT_TRUE(sim2.state().halted);
  EXPECT_EQ(sim2.state().halt_reason, HaltReason::IllegalInstruction);
  EXPECT_NE(sim2.diagnostic().find("read-only"), std::string::npos);

  // csrrs with rs1=x0 never writes, so reading a counter this way is fine.
  Simulator sim3(small_options());
  sim3.load_words(0, {encode({Opcode::Csrrs, 5, 0, 0, 0, kCycleCsrAddr})});
  sim3.step();
  EXPECT_FALSE(sim3.state().halted);
}

TEST(Csr, UnknownCsrHalts) {
  Simulator sim(small_options());
  sim.load_words(0, {encode({Opcode::Csrrs, 5, 0, 0, 0, 0x300})});  // mstatus
  sim.step();
  EXPECT_TRUE(sim.state().halted);
  EXPECT_EQ(sim.state().halt_reason, HaltReason::IllegalInstruction);
  EXPECT_NE(sim.diagnostic().find("unimplemented csr"), std::string::npos);
}

TEST(Csr, MulCsrCircuitSelectIsLegalizedWithWarning) {
  Simulator sim(small_options());
  sim.state().regs[5] = 0x07FFFFF9u | 0x6u;  // request circuit 3
  sim.load_words(0, {encode({Opcode::Csrrw, 6, 5, 0, 0, kMulCsrAddr}),
                     encode({Opcode::Csrrs, 7, 0, 0, 0, kMulCsrAddr})});
  testing::internal::CaptureStderr();
  sim.step();
  sim.step();
  const std::string err = testing::internal::GetCapturedStderr();
  ASSERT_FALSE(sim.state().halted);
  EXPECT_EQ(sim.warnings().size(), 1u);
  EXPECT_NE(err.find("treating as 00"), std::string::npos);
  EXPECT_EQ(sim.state().regs[7], 0x07FFFFF9u);  // select bits read back as 00
  const HierConfig cfg = sim.active_mul_config();
  EXPECT_EQ(cfg.er_ll, 0xFFu);
  EXPECT_EQ(cfg.er_x, 0xFFu);
  EXPECT_EQ(cfg.er_hh, 0xFFu);
}

TEST(Halt, EbreakRetiresAndStops) {
  Simulator sim(small_options());
  sim.load_words(0, {encode({Opcode::Ebreak, 0, 0, 0, 0, 0})});
  sim.step();
  EXPECT_TRUE(sim.state().halted);
  EXPECT_EQ(sim.state().halt_reason, HaltReason::Ebreak);
  EXPECT_EQ(sim.state().exit_code, 0);
  EXPECT_EQ(sim.state().instret, 1u);
  const uint64_t instret = sim.state().instret;
  sim.step();  // stepping a halted core is a no-op
  EXPECT_EQ(sim.state().instret, instret);
}

TEST(Halt, ExitEcallCarriesCode) {
  Simulator sim(small_options());
  sim.state().regs[reg::a7] = 93;
  sim.state().regs[reg::a0] = 41;
  sim.load_words(0, {encode({Opcode::Ecall, 0, 0, 0, 0, 0})});
  sim.step();
  EXPECT_TRUE(sim.state().halted);
  EXPECT_EQ(sim.state().halt_reason, HaltReason::Exit);
  EXPECT_EQ(sim.state().exit_code, 41);
  EXPECT_EQ(sim.state().instret, 1u);
}

TEST(Halt, WriteEcallAppendsToStdout) {
  Simulator sim(small_options());
  const char msg[] = "hi\n";
  for (size_t i = 0; i < 3; ++i)
    sim.memory().store8(static_cast<uint32_t>(0x200 + i),
                        static_cast<uint8_t>(msg[i]));
  sim.state().regs[reg::a7] = 64;
  sim.state().regs[reg::a0] = 1;
  sim.state().regs[reg::a1] = 0x200;
  sim.state().regs[reg::a2] = 3;
  sim.load_words(0, {encode({Opcode::Ecall, 0, 0, 0, 0, 0}),
                     encode({Opcode::Ebreak, 0, 0, 0, 0, 0})});
  sim.step();
  ASSERT_FALSE(sim.state().halted);
  EXPECT_EQ(sim.guest_stdout(), "hi\n");
  EXPECT_EQ(sim.state().regs[reg::a0], 3u);  // bytes written
  sim.step();
  EXPECT_EQ(sim.state().halt_reason, HaltReason::Ebreak);
}

TEST(Halt, UnsupportedEcallIsDistinct) {
  Simulator sim(small_options());
  sim.state().regs[reg::a7] = 222;
  sim.load_words(0, {encode({Opcode::Ecall, 0, 0, 0, 0, 0})});
  sim.step();
  EXPECT_EQ(sim.state().halt_reason, HaltReason::UnsupportedEcall);
  EXPECT_NE(sim.diagnostic().find("ecall 222"), std::string::npos);
}

TEST(Halt, DistinctFaultDiagnostics) {
  {  // misaligned pc via jalr
    Simulator sim(small_options());
    sim.state().regs[5] = 0x102;
    sim.load_words(0, {encode({Opcode::Jalr, 0, 5, 0, 0, 0})});
    sim.step();  // jumps to 0x102 (bit 0 would be cleared, bit 1 stays)
    sim.step();  // fetch faults
    EXPECT_EQ(sim.state().halt_reason, HaltReason::MisalignedPc);
    EXPECT_NE(sim.diagnostic().find("misaligned pc"), std::string::npos);
    EXPECT_EQ(sim.state().instret, 1u);  // only the jalr retired
  }
  {  // fetch past the end of memory
    Simulator sim(small_options());
    sim.state().regs[5] = kSmallMem;
    sim.load_words(0, {encode({Opcode::Jalr, 0, 5, 0, 0, 0})});
    sim.step();
    sim.step();
    EXPECT_EQ(sim.state().halt_reason, HaltReason::MemoryFault);
    EXPECT_NE(sim.diagnostic().find("instruction fetch"), std::string::npos);
  }
  {  // load out of bounds
    Simulator sim(small_options());
    sim.state().regs[5] = 0xFFFF0000u;
    sim.load_words(0, {encode({Opcode::Lw, 6, 5, 0, 0, 0})});
    sim.step();
    EXPECT_EQ(sim.state().halt_reason, HaltReason::MemoryFault);
    EXPECT_NE(sim.diagnostic().find("load"), std::string::npos);
  }
  {  // store out of bounds
    Simulator sim(small_options());
    sim.state().regs[5] = static_cast<uint32_t>(kSmallMem - 2);
    sim.load_words(0, {encode({Opcode::Sw, 0, 5, 6, 0, 0})});
    sim.step();
    EXPECT_EQ(sim.state().halt_reason, HaltReason::MemoryFault);
    EXPECT_NE(sim.diagnostic().find("store"), std::string::npos);
  }
  {  // illegal instruction word
    Simulator sim(small_options());
    sim.load_words(0, {0x00000000u});
    sim.step();
    EXPECT_EQ(sim.state().halt_reason, HaltReason::IllegalInstruction);
    EXPECT_NE(sim.diagnostic().find("illegal instruction"), std::string::npos);
    EXPECT_EQ(sim.state().instret, 0u);
  }
}

TEST(Rv32e, HighRegistersFaultOnlyInEMode) {
  const uint32_t word = encode({Opcode::Addi, 16, 0, 0, 1, 0});  // writes x16
  {
    Simulator sim(small_options());
    sim.load_words(0, {word});
    sim.step();
    EXPECT_FALSE(sim.state().halted);
    EXPECT_EQ(sim.state().regs[16], 1u);
  }
  {
    SimOptions o = small_options();
    o.rv32e = true;
    Simulator sim(o);
    sim.load_words(0, {word});
    sim.step();
    EXPECT_TRUE(sim.state().halted);
    EXPECT_EQ(sim.state().halt_reason, HaltReason::IllegalInstruction);
    EXPECT_NE(sim.diagnostic().find("rv32e"), std::string::npos);
  }
  {  // x15 is fine in E mode; csr zimm fields above 15 are immediates, not regs
    SimOptions o = small_options();
    o.rv32e = true;
    Simulator sim(o);
    sim.load_words(0, {encode({Opcode::Addi, 15, 0, 0, 1, 0}),
                       encode({Opcode::Csrrwi, 5, 17, 0, 0, kAluCsrAddr})});
    sim.step();
    sim.step();
    EXPECT_FALSE(sim.state().halted) << sim.diagnostic();
    EXPECT_EQ(sim.state().csrs[kAluCsrAddr], 17u);
  }
}

TEST(Run, SingleEbreakReportsOneInstruction) {
  Simulator sim(small_options());
  sim.load_words(0, {encode({Opcode::Ebreak, 0, 0, 0, 0, 0})});
  const RunReport r = sim.run();
  EXPECT_EQ(r.reason, HaltReason::Ebreak);
  EXPECT_FALSE(r.budget_exhausted);
  EXPECT_EQ(r.instret, 1u);
  EXPECT_EQ(r.cycle, 1u);
  EXPECT_DOUBLE_EQ(r.cpi, 1.0);
}

TEST(Run, BudgetExhaustionIsDistinctFromHalt) {
  ProgramBuilder b;
  b.label("spin");
  b.j("spin");
  Simulator sim(small_options());
  sim.load_words(0, b.build());
  const RunReport r = sim.run(1000);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.reason, HaltReason::BudgetExhausted);
  EXPECT_FALSE(sim.state().halted);  // can keep running
  EXPECT_EQ(r.instret, 1000u);
  EXPECT_EQ(r.cycle, 2000u);  // every jump pays the taken penalty
}

TEST(Run, TimingModelAddsUp) {
  // addi(1) + lw(1) + sw(1) + mul(4) + div(32) + taken jal(2) +
  // not-taken beq(1) + taken beq(2) + ebreak(1) = 45 cycles, 9 instructions
  ProgramBuilder b;
  b.addi(reg::t0, reg::zero, 64);
  b.lw(reg::t1, reg::t0, 0);
  b.sw(reg::t1, reg::t0, 4);
  b.mul(reg::t2, reg::t0, reg::t0);
  b.div(reg::t2, reg::t0, reg::t0);
  b.j("next");
  b.label("next");
  b.beq(reg::t0, reg::zero, "skip");  // not taken
  b.beq(reg::t0, reg::t0, "skip");    // taken
  b.label("skip");
  b.ebreak();
  Simulator sim(small_options());
  sim.load_words(0, b.build());
  const RunReport r = sim.run();
  EXPECT_EQ(r.reason, HaltReason::Ebreak);
  EXPECT_EQ(r.instret, 9u);
  EXPECT_EQ(r.cycle, 45u);
  EXPECT_EQ(r.mul_count, 1u);
  EXPECT_EQ(r.div_count, 1u);
}

TEST(Run, EnergyIsAdditivePerClass) {
  SimOptions o = small_options();
  o.mul_unit = CompressorKind::Exact;
  ProgramBuilder b;
  b.addi(reg::t0, reg::zero, 3);
  b.mul(reg::t1, reg::t0, reg::t0);
  b.mul(reg::t1, reg::t1, reg::t0);
  b.ebreak();
  {
    Simulator sim(o);
    sim.load_words(0, b.build());
    const RunReport r = sim.run();
    const TimingEnergyModel m;
    EXPECT_NEAR(r.energy_pj, 2 * m.epj_base + 2 * m.epj_mul_exact, 1e-9);
    EXPECT_NEAR(r.pj_per_instr, r.energy_pj / 4.0, 1e-12);
  }
  {  // same program on the SSM unit: exact mode vs approximate mode constants
    SimOptions ssm = small_options();
    ssm.mul_unit = CompressorKind::Ssc;
    const TimingEnergyModel m;
    Simulator sim(ssm);
    sim.load_words(0, b.build());
    const RunReport r = sim.run();  // mulcsr=0: exact mode
    EXPECT_NEAR(r.energy_pj, 2 * m.epj_base + 2 * m.epj_mul_ssm_exact, 1e-9);

    Simulator sim2(ssm);
    sim2.state().csrs[kMulCsrAddr] = 0x1;  // approximate mode
    sim2.load_words(0, b.build());
    const RunReport r2 = sim2.run();
    EXPECT_NEAR(r2.energy_pj, 2 * m.epj_base + 2 * m.epj_mul_ssm_approx, 1e-9);

    Simulator sim3(ssm);
    sim3.state().csrs[kMulCsrAddr] = 0x07FFFFF9u;  // enabled, all-exact masks
    sim3.load_words(0, b.build());
    const RunReport r3 = sim3.run();
    EXPECT_NEAR(r3.energy_pj, 2 * m.epj_base + 2 * m.epj_mul_ssm_exact, 1e-9);
  }
}

TEST(Run, ReportSerializesToJson) {
  Simulator sim(small_options());
  sim.load_words(0, {encode({Opcode::Ebreak, 0, 0, 0, 0, 0})});
  const RunReport r = sim.run();
  const nlohmann::json j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("reason"), "ebreak");
  EXPECT_EQ(j.at("instret"), 1);
  EXPECT_EQ(j.at("exit_code"), 0);
  EXPECT_EQ(j.at("budget_exhausted"), false);
  EXPECT_TRUE(j.contains("pj_per_instr"));
  EXPECT_TRUE(j.contains("mul_count"));
}

TEST(Run, ElfImageRunsToCompletion) {
  ProgramBuilder b;
  b.li(reg::a0, 7);
  b.li(reg::a1, 6);
  b.mul(reg::a0, reg::a0, reg::a1);
  b.li(reg::a7, 93);
  b.ecall();
  const auto words = b.build();

  ElfImage image;
  image.entry = 0x1000;
  ElfSegment seg;
  seg.vaddr = 0x1000;
  for (uint32_t w : words)
    for (int i = 0; i < 4; ++i)
      seg.bytes.push_back(static_cast<uint8_t>(w >> (8 * i)));
  image.segments.push_back(seg);

  Simulator sim(small_options());
  sim.load_image(image);
  EXPECT_EQ(sim.state().pc, 0x1000u);
  const RunReport r = sim.run();
  EXPECT_EQ(r.reason, HaltReason::Exit);
  EXPECT_EQ(r.exit_code, 42);
}

TEST(Run, CsrSwitchSequenceMatchesExactnessEquivalence) {
  // Same small three-multiply kernel under csr=0 and csr=0x07FFFFF9 must
  // agree bit-for-bit; csr=1 may differ.
  auto run_with = [](uint32_t csr) {
    ProgramBuilder b;
    b.li(reg::t0, static_cast<int32_t>(csr));
    b.csrrw(reg::zero, kMulCsrAddr, reg::t0);
    b.li(reg::a0, 12345);
    b.li(reg::a1, 678);
    b.mul(reg::a2, reg::a0, reg::a1);
    b.mul(reg::a3, reg::a2, reg::a1);
    b.mulh(reg::a4, reg::a2, reg::a3);
    b.ebreak();
    Simulator sim(small_options());
    sim.load_words(0, b.build());
    sim.run();
    return std::array<uint32_t, 3>{sim.state().regs[reg::a2],
                                   sim.state().regs[reg::a3],
                                   sim.state().regs[reg::a4]};
  };
  const auto exact = run_with(0);
  const auto exact_mode = run_with(0x07FFFFF9u);
  EXPECT_EQ(exact, exact_mode);
  EXPECT_EQ(exact[0], 12345u * 678u);
}

}  // namespace
}  // namespace axrv
