#include "axrv/mul8.hpp"

#include <cassert>

namespace axrv {

namespace {

// Per-column bit stacks for one reduction stage.
struct Cols {
    Bit bit[18][6] = {};
    uint8_t h[18] = {};

    void push(unsigned c, Bit v) {
        assert(h[c] < 6);
        bit[c][h[c]++] = v;
    }
};

Bit er_bit_for_column(unsigned c, uint8_t er_mask, ErMapping m) {
    if (c < kReconfigLo || c > kReconfigHi) return 1;
    unsigned i = m == ErMapping::LsbLow ? c - kReconfigLo : kReconfigHi - c;
    return (er_mask >> i) & 1u;
}

// One carry-save pass over columns [lo, hi] of `in`: a 4:2 compressor per
// column, cin/cout chained upward, terminal cout appended at hi+1.  Sums
// land at their own column, carries one up, so within `out` each column
// receives carry(c-1) before sum(c).
void reduce_span(const Cols& in, Cols& out, unsigned lo, unsigned hi,
                 CompressorKind kind, uint8_t er_mask, ErMapping m) {
    Bit cin = 0;
    for (unsigned c = lo; c <= hi; ++c) {
        assert(in.h[c] <= 4);
        Bit x[4] = {};
        for (unsigned k = 0; k < in.h[c]; ++k) x[k] = in.bit[c][k];
        CompressorOutputs o = compress(kind, x[0], x[1], x[2], x[3], cin,
                                       er_bit_for_column(c, er_mask, m));
        out.push(c, o.sum);
        out.push(c + 1, o.carry);
        cin = o.cout;
    }
    out.push(hi + 1, cin);
}

}  // namespace

PartialProductMatrix gen_partial_products(uint8_t a, uint8_t b) {
    PartialProductMatrix m;
    for (unsigned j = 0; j < 8; ++j)
        for (unsigned i = 0; i < 8; ++i) {
            unsigned c = i + j;
            m.bit[c][m.height[c]++] = Bit((a >> i) & (b >> j) & 1u);
        }
    return m;
}

uint32_t reduce_and_add(const PartialProductMatrix& m, CompressorKind kind,
                        uint8_t er_mask, ErMapping mapping) {
    // Rows 0..3 and 4..7 are reduced as separate groups so every stage-1
    // column holds at most four bits.  Within column c the stacked bits
    // are in ascending row order, row j = k for c <= 7 and c-7+k above,
    // which recovers the group split.
    Cols pp_lo, pp_hi;
    for (unsigned c = 0; c < 15; ++c)
        for (unsigned k = 0; k < m.height[c]; ++k) {
            unsigned j = c <= 7 ? k : c - 7 + k;
            (j < 4 ? pp_lo : pp_hi).push(c, m.bit[c][k]);
        }

    Cols m1;
    reduce_span(pp_lo, m1, 0, 10, kind, er_mask, mapping);
    reduce_span(pp_hi, m1, 4, 14, kind, er_mask, mapping);

    Cols m2;
    for (unsigned c = 0; c < 4; ++c)
        for (unsigned k = 0; k < m1.h[c]; ++k) m2.push(c, m1.bit[c][k]);
    reduce_span(m1, m2, 4, 15, kind, er_mask, mapping);

    // Two rows remain; a carry-propagate add finishes the product.
    uint32_t r0 = 0, r1 = 0;
    for (unsigned c = 0; c <= 16; ++c) {
        assert(m2.h[c] <= 2);
        if (m2.h[c] > 0) r0 |= uint32_t(m2.bit[c][0]) << c;
        if (m2.h[c] > 1) r1 |= uint32_t(m2.bit[c][1]) << c;
    }
    return r0 + r1;
}

uint32_t mul8(uint8_t a, uint8_t b, CompressorKind kind, uint8_t er_mask,
              ErMapping mapping) {
    return reduce_and_add(gen_partial_products(a, b), kind, er_mask, mapping);
}

uint32_t max_error_bound(CompressorKind kind) {
    // Reconfigurable sites: stage-1 low group columns 4..10, stage-1 high
    // group columns 4..11, stage-2 columns 4..11.
    uint32_t weight_sum = 0;
    for (unsigned c = 4; c <= 10; ++c) weight_sum += 1u << c;
    for (unsigned c = 4; c <= 11; ++c) weight_sum += 2u << c;
    switch (kind) {
        case CompressorKind::Dfc: return 2 * weight_sum;  // ED down to -2
        case CompressorKind::Ssc: return weight_sum;      // ED always +1
        default: return 0;
    }
}

const char* multiplier_name(CompressorKind kind) {
    switch (kind) {
        case CompressorKind::Dfc: return "dfm";
        case CompressorKind::Ssc: return "ssm";
        default: return "exact";
    }
}

std::string tree_description() {
    return "two-stage 4:2 carry-save tree; stage 1 compresses row groups "
           "[0,3] over columns 0-10 and [4,7] over columns 4-14, stage 2 "
           "compresses columns 4-15; cin/cout chained upward per span with "
           "the terminal cout appended one column above; 23 reconfigurable "
           "sites in columns 4-11 (mask bit i = column 4+i), all other "
           "sites fixed exact; final carry-propagate add over the two "
           "remaining rows";
}

}  // namespace axrv
