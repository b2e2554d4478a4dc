#include "axrv/mulhier.hpp"

namespace axrv {

MulCsr decode_mulcsr(uint32_t raw) {
    MulCsr f;
    f.enable = (raw & 1u) != 0;
    f.circuit_select = uint8_t((raw >> 1) & 0x3u);
    f.er_ll = uint8_t((raw >> 3) & 0xFFu);
    f.er_x = uint8_t((raw >> 11) & 0xFFu);
    f.er_hh = uint8_t((raw >> 19) & 0xFFu);
    f.reserved = uint8_t((raw >> 27) & 0x1Fu);
    return f;
}

uint32_t encode_mulcsr(const MulCsr& f) {
    return (f.enable ? 1u : 0u) | (uint32_t(f.circuit_select & 0x3u) << 1) |
           (uint32_t(f.er_ll) << 3) | (uint32_t(f.er_x) << 11) |
           (uint32_t(f.er_hh) << 19) | (uint32_t(f.reserved & 0x1Fu) << 27);
}

HierConfig config_from_csr(CompressorKind kind, const MulCsr& csr,
                           bool recursive, ErMapping mapping) {
    HierConfig cfg;
    cfg.kind = kind;
    cfg.recursive = recursive;
    cfg.mapping = mapping;
    if (csr.enable) {
        cfg.er_ll = csr.er_ll;
        cfg.er_x = csr.er_x;
        cfg.er_hh = csr.er_hh;
    }
    return cfg;
}

uint64_t mul16(uint16_t a, uint16_t b, const HierConfig& cfg) {
    uint8_t al = uint8_t(a), ah = uint8_t(a >> 8);
    uint8_t bl = uint8_t(b), bh = uint8_t(b >> 8);
    uint64_t ll = mul8(al, bl, cfg.kind, cfg.er_ll, cfg.mapping);
    uint64_t lh = mul8(al, bh, cfg.kind, cfg.er_x, cfg.mapping);
    uint64_t hl = mul8(ah, bl, cfg.kind, cfg.er_x, cfg.mapping);
    uint64_t hh = mul8(ah, bh, cfg.kind, cfg.er_hh, cfg.mapping);
    return ll + ((lh + hl) << 8) + (hh << 16);
}

uint64_t mul32u(uint32_t a, uint32_t b, const HierConfig& cfg) {
    uint16_t al = uint16_t(a), ah = uint16_t(a >> 16);
    uint16_t bl = uint16_t(b), bh = uint16_t(b >> 16);

    HierConfig ll_cfg = cfg, x_cfg = cfg, hh_cfg = cfg;
    if (!cfg.recursive) {
        // Unit-level configuration: each 16-bit unit runs uniformly on its
        // own class mask.
        ll_cfg.er_ll = ll_cfg.er_x = ll_cfg.er_hh = cfg.er_ll;
        x_cfg.er_ll = x_cfg.er_x = x_cfg.er_hh = cfg.er_x;
        hh_cfg.er_ll = hh_cfg.er_x = hh_cfg.er_hh = cfg.er_hh;
    }

    uint64_t p_ll = mul16(al, bl, ll_cfg);
    uint64_t p_lh = mul16(al, bh, x_cfg);
    uint64_t p_hl = mul16(ah, bl, x_cfg);
    uint64_t p_hh = mul16(ah, bh, hh_cfg);
    return p_ll + ((p_lh + p_hl) << 16) + (p_hh << 32);
}

uint32_t mul_signed(uint32_t a, uint32_t b, MulOp op, const HierConfig& cfg) {
    bool a_signed = op != MulOp::Mulhu;
    bool b_signed = op == MulOp::Mul || op == MulOp::Mulh;
    bool a_neg = a_signed && (a >> 31);
    bool b_neg = b_signed && (b >> 31);
    uint32_t ma = a_neg ? 0u - a : a;
    uint32_t mb = b_neg ? 0u - b : b;
    uint64_t p = mul32u(ma, mb, cfg);
    if (a_neg != b_neg) p = 0u - p;
    return op == MulOp::Mul ? uint32_t(p) : uint32_t(p >> 32);
}

}  // namespace axrv
