#pragma once

#include <cstdint>

#include "axrv/mul8.hpp"

namespace axrv {

// Decoded view of the 32-bit multiplier control register (CSR 0x801).
// Bit 0 enables approximation, bits 2:1 select the multiplier circuit
// (only 00 is implemented; other values are reported by the simulator and
// treated as 00), bits 10:3 / 18:11 / 26:19 hold the Er masks for the
// low-low, cross, and high-high sub-products, bits 31:27 are reserved.
struct MulCsr {
    bool enable = false;
    uint8_t circuit_select = 0;
    uint8_t er_ll = 0;
    uint8_t er_x = 0;
    uint8_t er_hh = 0;
    uint8_t reserved = 0;

    bool operator==(const MulCsr&) const = default;
};

MulCsr decode_mulcsr(uint32_t raw);
uint32_t encode_mulcsr(const MulCsr& f);

// Multiplier configuration resolved from a CSR value.  When enable is
// clear every Er field acts as 0xFF (fully exact).  `recursive` selects
// how the three class masks reach the 8-bit units of a 32-bit multiply:
// true (default) applies the LL/cross/HH mapping at the 8-bit grain
// inside every 16-bit unit, so er_hh already perturbs the high half of
// the low-low 16-bit product; false configures each 16-bit unit uniformly
// with its own class field.
struct HierConfig {
    CompressorKind kind = CompressorKind::Exact;
    uint8_t er_ll = 0xFF;
    uint8_t er_x = 0xFF;
    uint8_t er_hh = 0xFF;
    bool recursive = true;
    ErMapping mapping = kDefaultErMapping;
};

HierConfig config_from_csr(CompressorKind kind, const MulCsr& csr,
                           bool recursive = true,
                           ErMapping mapping = kDefaultErMapping);

// 16x16 via four 8-bit sub-products on one reconfigurable unit:
// LL + ((LH+HL)<<8) + (HH<<16), sub-products mapped to er_ll / er_x /
// er_hh by significance class, accumulation exact.  Approximate results
// can exceed 32 bits, hence the 64-bit return.
uint64_t mul16(uint16_t a, uint16_t b, const HierConfig& cfg);

// 32x32 from four 16-bit units: P_LL + ((P_LH+P_HL)<<16) + (P_HH<<32),
// accumulated mod 2^64 (the hardware bus width; exact products never
// wrap, and no tested approximate vector does either).
uint64_t mul32u(uint32_t a, uint32_t b, const HierConfig& cfg);

// RV32M multiply family on top of the unsigned core: operands are reduced
// to magnitudes per the op's signedness rules, multiplied unsigned, and
// the 64-bit product is negated on sign mismatch.  MUL returns the low
// word, the MULH variants the high word.  With an exact configuration
// this reproduces two's-complement reference semantics.
enum class MulOp : uint8_t { Mul, Mulh, Mulhsu, Mulhu };

uint32_t mul_signed(uint32_t a, uint32_t b, MulOp op, const HierConfig& cfg);

}  // namespace axrv
