#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "axrv/mul8.hpp"
#include "axrv/mulhier.hpp"

namespace axrv {

// Aggregate error figures for one multiplier configuration, measured
// against the exact product.  Error distance ED = approx - exact.
//
// Conventions: `er` counts any mismatch; `mred` averages |ED|/exact over
// the pairs whose exact product is nonzero (the usual convention for
// multipliers, since ED/0 is undefined); `nmed` normalises the mean |ED|
// by the largest exact product of the operand width.
struct ErrorStats {
    double er = 0.0;
    double mred = 0.0;
    double nmed = 0.0;
    double med = 0.0;
    int64_t max_ed = 0;   // signed ED at the pair with the largest |ED|
    int64_t min_ed = 0;   // most negative ED encountered (0 if none)
    uint64_t worst_a = 0; // operands of the largest-|ED| pair
    uint64_t worst_b = 0;
    uint64_t samples = 0;
};

// Exhaustive characterisation of the 8x8 multiplier over all 65536 operand
// pairs for a fixed Er mask.
ErrorStats characterize8(CompressorKind kind, uint8_t er_mask,
                         ErMapping mapping = kDefaultErMapping);

// characterize8 for every Er mask 0..255; result indexed by mask value.
std::vector<ErrorStats> sweep8(CompressorKind kind,
                               ErMapping mapping = kDefaultErMapping);

// Sampled characterisation of the hierarchical 16- or 32-bit multiplier:
// n operand pairs drawn from a seeded mt19937_64 (raw draws masked to the
// operand width, so the stream is identical across standard libraries).
// Same metric conventions as characterize8, with NMED normalised by the
// width's maximum exact product.  Throws std::invalid_argument for n = 0
// or a width other than 16/32.
ErrorStats characterize_wide(unsigned width, const HierConfig& cfg,
                             uint64_t n, uint64_t seed);

// Writes a sweep as CSV: `#`-prefixed metadata lines naming the multiplier
// kind, tree, mask mapping and metric conventions, then one row per mask.
void write_sweep_csv(std::ostream& os, CompressorKind kind, ErMapping mapping,
                     const std::vector<ErrorStats>& sweep);

const char* to_string(ErMapping mapping);

}  // namespace axrv
