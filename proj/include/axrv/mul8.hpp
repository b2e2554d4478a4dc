#pragma once

#include <cstdint>
#include <string>

#include "axrv/compressor.hpp"

namespace axrv {

// How the 8 bits of an Er mask map onto the reconfigurable columns 4..11 of
// the 8x8 tree.  LsbLow wires mask bit i to column 4+i, so the mask's
// numeric high bits guard the high-weight columns and sweeping the mask as
// an integer produces sharp accuracy steps where bit 6 or bit 7 flips.
// LsbHigh is the reversed wiring, kept for comparison sweeps.
enum class ErMapping : uint8_t {
    LsbLow,   // mask bit i -> column 4+i
    LsbHigh,  // mask bit i -> column 11-i
};

inline constexpr ErMapping kDefaultErMapping = ErMapping::LsbLow;

// Reconfigurable column span of the reduction tree.  Compressor sites whose
// sum output lands in [kReconfigLo, kReconfigHi] honour the Er mask; all
// other sites are fixed exact.
inline constexpr unsigned kReconfigLo = 4;
inline constexpr unsigned kReconfigHi = 11;

// Number of reconfigurable compressor sites in the tree.
inline constexpr unsigned kReconfigSites = 23;

// 8x8 partial products as per-column bit stacks, columns 0..14, bits within
// a column ordered by ascending multiplier-row index.  Wiring is
// structural: slot (c, k) always holds the same a_i*b_j term, zero or not.
struct PartialProductMatrix {
    Bit bit[15][8] = {};
    uint8_t height[15] = {};

    // Weighted sum of all stored bits: equals a*b for a freshly generated
    // matrix.
    uint32_t value() const {
        uint32_t v = 0;
        for (unsigned c = 0; c < 15; ++c)
            for (unsigned k = 0; k < height[c]; ++k)
                v += uint32_t(bit[c][k]) << c;
        return v;
    }
};

PartialProductMatrix gen_partial_products(uint8_t a, uint8_t b);

// Two-stage 4:2 compressor carry-save reduction of the matrix followed by
// an exact carry-propagate add.  `kind` selects the compressor family used
// at the reconfigurable sites (Exact makes the mask irrelevant); `er_mask`
// bit = 1 keeps the mapped column exact, 0 switches it to the approximate
// behaviour.  The approximate product can exceed 16 bits (largest positive
// deviation bound below), hence the 32-bit return.
uint32_t reduce_and_add(const PartialProductMatrix& m, CompressorKind kind,
                        uint8_t er_mask,
                        ErMapping mapping = kDefaultErMapping);

// gen_partial_products + reduce_and_add.
uint32_t mul8(uint8_t a, uint8_t b, CompressorKind kind, uint8_t er_mask,
              ErMapping mapping = kDefaultErMapping);

// Static per-input bound on |approx - exact| for the given compressor
// family: sum over reconfigurable sites of max|ED| * 2^column.
uint32_t max_error_bound(CompressorKind kind);

// One-line structural description of the reduction tree, for reports.
std::string tree_description();

// Multiplier-level name of a compressor family: "exact", "dfm", "ssm".
const char* multiplier_name(CompressorKind kind);

}  // namespace axrv
