#include "axrv/errorlab.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace axrv {

ErrorStats characterize8(CompressorKind kind, uint8_t er_mask,
                         ErMapping mapping) {
    ErrorStats st;
    uint64_t mismatches = 0;
    uint64_t abs_ed_sum = 0;
    double red_sum = 0.0;
    uint64_t nonzero_exact = 0;
    uint64_t worst_abs = 0;

    for (unsigned a = 0; a < 256; ++a) {
        for (unsigned b = 0; b < 256; ++b) {
            uint32_t exact = a * b;
            uint32_t approx =
                mul8(uint8_t(a), uint8_t(b), kind, er_mask, mapping);
            int64_t ed = int64_t(approx) - int64_t(exact);
            if (ed != 0) ++mismatches;
            uint64_t abs_ed = uint64_t(ed < 0 ? -ed : ed);
            abs_ed_sum += abs_ed;
            if (exact != 0) {
                ++nonzero_exact;
                red_sum += double(abs_ed) / double(exact);
            }
            if (abs_ed > worst_abs) {
                worst_abs = abs_ed;
                st.max_ed = ed;
                st.worst_a = a;
                st.worst_b = b;
            }
            if (ed < st.min_ed) st.min_ed = ed;
        }
    }

    st.samples = 65536;
    st.er = double(mismatches) / 65536.0;
    st.med = double(abs_ed_sum) / 65536.0;
    st.nmed = st.med / double(255 * 255);
    st.mred = nonzero_exact ? red_sum / double(nonzero_exact) : 0.0;
    return st;
}

std::vector<ErrorStats> sweep8(CompressorKind kind, ErMapping mapping) {
    std::vector<ErrorStats> out;
    out.reserve(256);
    for (unsigned er = 0; er < 256; ++er)
        out.push_back(characterize8(kind, uint8_t(er), mapping));
    return out;
}

ErrorStats characterize_wide(unsigned width, const HierConfig& cfg,
                             uint64_t n, uint64_t seed) {
    if (n == 0) throw std::invalid_argument("characterize_wide: n must be >= 1");
    if (width != 16 && width != 32)
        throw std::invalid_argument("characterize_wide: width must be 16 or 32");

    const uint64_t mask = width == 16 ? 0xFFFFu : 0xFFFFFFFFu;
    const double max_product =
        double(mask) * double(mask);  // largest exact product of the width

    std::mt19937_64 rng(seed);
    ErrorStats st;
    uint64_t mismatches = 0;
    uint64_t abs_ed_sum = 0;
    double red_sum = 0.0;
    uint64_t nonzero_exact = 0;
    uint64_t worst_abs = 0;

    for (uint64_t i = 0; i < n; ++i) {
        uint64_t a = rng() & mask;
        uint64_t b = rng() & mask;
        uint64_t exact, approx;
        if (width == 16) {
            exact = a * b;
            approx = mul16(uint16_t(a), uint16_t(b), cfg);
        } else {
            exact = a * b;
            approx = mul32u(uint32_t(a), uint32_t(b), cfg);
        }
        int64_t ed = int64_t(approx - exact);
        if (ed != 0) ++mismatches;
        uint64_t abs_ed = uint64_t(ed < 0 ? -ed : ed);
        abs_ed_sum += abs_ed;
        if (exact != 0) {
            ++nonzero_exact;
            red_sum += double(abs_ed) / double(exact);
        }
        if (abs_ed > worst_abs) {
            worst_abs = abs_ed;
            st.max_ed = ed;
            st.worst_a = a;
            st.worst_b = b;
        }
        if (ed < st.min_ed) st.min_ed = ed;
    }

    st.samples = n;
    st.er = double(mismatches) / double(n);
    st.med = double(abs_ed_sum) / double(n);
    st.nmed = st.med / max_product;
    st.mred = nonzero_exact ? red_sum / double(nonzero_exact) : 0.0;
    return st;
}

const char* to_string(ErMapping mapping) {
    return mapping == ErMapping::LsbLow ? "lsb_low" : "lsb_high";
}

namespace {

// %.9g keeps at least six significant digits while staying compact and
// locale-independent.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, CompressorKind kind, ErMapping mapping,
                     const std::vector<ErrorStats>& sweep) {
    os << "# kind=" << multiplier_name(kind) << ", ermap=" << to_string(mapping)
       << ", sampling=exhaustive\n";
    os << "# tree=" << tree_description() << "\n";
    os << "# mred_convention=exclude_zero_exact, nmed_denominator=65025\n";
    os << "er,er_rate,mred,nmed,max_ed,worst_a,worst_b,n\n";
    for (size_t er = 0; er < sweep.size(); ++er) {
        const ErrorStats& s = sweep[er];
        os << er << ',' << fmt(s.er) << ',' << fmt(s.mred) << ','
           << fmt(s.nmed) << ',' << s.max_ed << ',' << s.worst_a << ','
           << s.worst_b << ',' << s.samples << '\n';
    }
}

}  // namespace axrv
