#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace axrv {

// Single binary digit. Stored in a byte; every entry point asserts {0,1}.
using Bit = uint8_t;

// Which 4:2 compressor cell model to evaluate.
//   Exact - plain exact compressor, ignores the er control bit
//   Dfc   - dual-full-adder-based reconfigurable compressor
//   Ssc   - single-stacking-based reconfigurable compressor
enum class CompressorKind { Exact, Dfc, Ssc };

// Output triple of a 4:2 compressor. Sum has the input weight, Carry and
// Cout both carry twice that weight, so value() ranges over [0,5].
struct CompressorOutputs {
    Bit cout;
    Bit carry;
    Bit sum;

    constexpr unsigned value() const { return 2u * cout + 2u * carry + sum; }
    friend bool operator==(const CompressorOutputs&, const CompressorOutputs&) = default;
};

struct AdderOutputs {
    Bit sum;
    Bit carry;
    friend bool operator==(const AdderOutputs&, const AdderOutputs&) = default;
};

// Exact 4:2 compressor: 2*cout + 2*carry + sum == x1+x2+x3+x4+cin.
CompressorOutputs exact_compressor(Bit x1, Bit x2, Bit x3, Bit x4, Bit cin);

// Reconfigurable compressor. er=1 selects exact operation for every kind.
// er=0 selects the approximate behavior of the chosen design; inputs that
// are not among the design's erroneous combinations stay exact.
CompressorOutputs compress(CompressorKind kind, Bit x1, Bit x2, Bit x3, Bit x4,
                           Bit cin, Bit er);

AdderOutputs full_adder(Bit a, Bit b, Bit c);
AdderOutputs half_adder(Bit a, Bit b);

// One row of a compressor behavior table. `input` packs the five input bits
// as x1:x2:x3:x4:cin with x1 in the most significant position, so ascending
// `input` order reproduces the usual truth-table row order.
struct CompressorTableRow {
    uint8_t input;  // 0..31
    CompressorOutputs out;
    int ed;  // value(out) - popcount(input)

    static constexpr uint8_t pack(Bit x1, Bit x2, Bit x3, Bit x4, Bit cin) {
        return static_cast<uint8_t>(x1 << 4 | x2 << 3 | x3 << 2 | x4 << 1 | cin);
    }
};

// All 32 rows of the er=0 behavior of `kind`, ascending input order.
std::array<CompressorTableRow, 32> behavior_table(CompressorKind kind);

// The rows of behavior_table(kind) with nonzero error distance.
// Dfc yields 13 rows, Ssc 8, Exact none.
std::vector<CompressorTableRow> error_table(CompressorKind kind);

const char* to_string(CompressorKind kind);

}  // namespace axrv
