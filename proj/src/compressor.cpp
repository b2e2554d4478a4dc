#include "axrv/compressor.hpp"

#include <cassert>

namespace axrv {

namespace {

constexpr bool is_bit(Bit b) { return b == 0 || b == 1; }

constexpr unsigned popcount5(uint8_t v) {
    unsigned n = 0;
    for (int i = 0; i < 5; ++i) n += (v >> i) & 1u;
    return n;
}

// Approximate-mode overrides, indexed by the packed input. Inputs not
// listed behave exactly. Encoded as cout<<2 | carry<<1 | sum.
struct Override {
    uint8_t input;
    uint8_t out;
};

// Dual-full-adder design, er=0: 13 erroneous input combinations with
// error distances in {-2,-1,+1}.
constexpr Override kDfcOverrides[] = {
    {0b00011, 0b011},  // +1
    {0b00101, 0b001},  // -1
    {0b01001, 0b001},  // -1
    {0b01100, 0b001},  // -1
    {0b01101, 0b001},  // -2
    {0b01110, 0b010},  // -1
    {0b01111, 0b011},  // -1
    {0b10001, 0b001},  // -1
    {0b10100, 0b101},  // +1
    {0b10110, 0b110},  // +1
    {0b10111, 0b111},  // +1
    {0b11011, 0b111},  // +1
    {0b11101, 0b101},  // -1
};

// Single-stacking design, er=0: 8 erroneous combinations, all ED = +1.
// Only the erroneous (ED != 0) rows are overlaid.  The published table
// also prints bit patterns for five zero-ED SSC rows with carry/cout
// transposed relative to the chained-full-adder encoding; propagating
// those transposed bits through the tree was measured to push the SSM
// error statistics far away from the published multiplier figures, so
// zero-ED rows keep the exact compressor's encoding.
constexpr Override kSscOverrides[] = {
    {0b00011, 0b011},
    {0b00101, 0b011},
    {0b01001, 0b011},
    {0b01111, 0b111},
    {0b10001, 0b011},
    {0b10111, 0b111},
    {0b11011, 0b111},
    {0b11101, 0b111},
};

constexpr CompressorOutputs unpack(uint8_t out) {
    return CompressorOutputs{static_cast<Bit>((out >> 2) & 1u),
                             static_cast<Bit>((out >> 1) & 1u),
                             static_cast<Bit>(out & 1u)};
}

// Flattened 32-entry behavior tables, built once.
struct FlatTable {
    std::array<CompressorOutputs, 32> rows;
};

FlatTable build_flat(CompressorKind kind) {
    FlatTable t;
    for (uint8_t in = 0; in < 32; ++in) {
        t.rows[in] = exact_compressor((in >> 4) & 1u, (in >> 3) & 1u,
                                      (in >> 2) & 1u, (in >> 1) & 1u, in & 1u);
    }
    auto overlay = [&](const Override* ov, size_t n) {
        for (size_t i = 0; i < n; ++i) t.rows[ov[i].input] = unpack(ov[i].out);
    };
    if (kind == CompressorKind::Dfc)
        overlay(kDfcOverrides, std::size(kDfcOverrides));
    else if (kind == CompressorKind::Ssc)
        overlay(kSscOverrides, std::size(kSscOverrides));
    return t;
}

const FlatTable& flat_table(CompressorKind kind) {
    static const FlatTable exact = build_flat(CompressorKind::Exact);
    static const FlatTable dfc = build_flat(CompressorKind::Dfc);
    static const FlatTable ssc = build_flat(CompressorKind::Ssc);
    switch (kind) {
        case CompressorKind::Dfc: return dfc;
        case CompressorKind::Ssc: return ssc;
        default: return exact;
    }
}

}  // namespace

CompressorOutputs exact_compressor(Bit x1, Bit x2, Bit x3, Bit x4, Bit cin) {
    assert(is_bit(x1) && is_bit(x2) && is_bit(x3) && is_bit(x4) && is_bit(cin));
    // Two chained full adders; cout is the carry of the first.
    const Bit s1 = x1 ^ x2 ^ x3;
    const Bit cout = (x1 & x2) | (x2 & x3) | (x1 & x3);
    const Bit sum = s1 ^ x4 ^ cin;
    const Bit carry = (s1 & x4) | (x4 & cin) | (s1 & cin);
    return CompressorOutputs{cout, carry, sum};
}

CompressorOutputs compress(CompressorKind kind, Bit x1, Bit x2, Bit x3, Bit x4,
                           Bit cin, Bit er) {
    assert(is_bit(er));
    if (er == 1 || kind == CompressorKind::Exact)
        return exact_compressor(x1, x2, x3, x4, cin);
    const uint8_t in = CompressorTableRow::pack(x1, x2, x3, x4, cin);
    return flat_table(kind).rows[in];
}

AdderOutputs full_adder(Bit a, Bit b, Bit c) {
    assert(is_bit(a) && is_bit(b) && is_bit(c));
    return AdderOutputs{static_cast<Bit>(a ^ b ^ c),
                        static_cast<Bit>((a & b) | (b & c) | (a & c))};
}

AdderOutputs half_adder(Bit a, Bit b) {
    assert(is_bit(a) && is_bit(b));
    return AdderOutputs{static_cast<Bit>(a ^ b), static_cast<Bit>(a & b)};
}

std::array<CompressorTableRow, 32> behavior_table(CompressorKind kind) {
    std::array<CompressorTableRow, 32> rows;
    const FlatTable& t = flat_table(kind);
    for (uint8_t in = 0; in < 32; ++in) {
        rows[in] = CompressorTableRow{
            in, t.rows[in],
            static_cast<int>(t.rows[in].value()) - static_cast<int>(popcount5(in))};
    }
    return rows;
}

std::vector<CompressorTableRow> error_table(CompressorKind kind) {
    std::vector<CompressorTableRow> out;
    for (const CompressorTableRow& row : behavior_table(kind))
        if (row.ed != 0) out.push_back(row);
    return out;
}

const char* to_string(CompressorKind kind) {
    switch (kind) {
        case CompressorKind::Exact: return "exact";
        case CompressorKind::Dfc: return "dfc";
        case CompressorKind::Ssc: return "ssc";
    }
    return "?";
}

}  // namespace axrv
