#include "axrv/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace axrv {
namespace {

constexpr int kImgDim = 16;
constexpr int32_t kConv3Taps[9] = {1, 2, 1, 2, 4, 2, 1, 2, 1};
// 6x6 kernel is the outer product of this vector with itself.
constexpr int32_t kConv6Vec[6] = {1, 5, 10, 10, 5, 1};
constexpr int32_t kFirTaps[8] = {1, 4, 16, 32, 32, 16, 4, 1};
constexpr int kFirSamples = 128;
// Biquad low-pass in Q12: y = (82 x0 + 165 x1 + 82 x2 + 6394 y1 - 2627 y2) >> 12.
// Unity DC gain, poles at |z| = 0.80.
constexpr int32_t kIirB0 = 82, kIirB1 = 165, kIirB2 = 82;
constexpr int32_t kIirA1 = 6394, kIirA2 = 2627;
constexpr int kIirSamples = 96;

int conv_out_dim(int kdim) { return kImgDim - kdim + 1; }
int matmul_dim(Workload w) { return w == Workload::Matmul3x3 ? 3 : 6; }

// Every kernel multiply goes through `mulf(value, coefficient)` — the data
// operand first, matching the rs1/rs2 order of the emitted MUL
// instructions (the approximate multipliers are not commutative).
// Accumulation is uint32 wraparound, the guest's ADD/SUB semantics.
template <typename MulFn>
std::vector<int32_t> run_conv(const WorkloadData& d, int kdim,
                              const int32_t* taps, MulFn&& mulf) {
  const int out_dim = conv_out_dim(kdim);
  std::vector<int32_t> out;
  out.reserve(static_cast<size_t>(out_dim) * out_dim);
  for (int i = 0; i < out_dim; ++i)
    for (int j = 0; j < out_dim; ++j) {
      uint32_t acc = 0;
      for (int ki = 0; ki < kdim; ++ki)
        for (int kj = 0; kj < kdim; ++kj) {
          const uint32_t pix = static_cast<uint32_t>(
              d.img[static_cast<size_t>((i + ki) * kImgDim + (j + kj))]);
          acc += mulf(pix, static_cast<uint32_t>(taps[ki * kdim + kj]));
        }
      out.push_back(static_cast<int32_t>(acc));
    }
  return out;
}

template <typename MulFn>
std::vector<int32_t> run_matmul(const WorkloadData& d, int n, MulFn&& mulf) {
  std::vector<int32_t> out;
  out.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      uint32_t acc = 0;
      for (int k = 0; k < n; ++k)
        acc += mulf(static_cast<uint32_t>(d.a[static_cast<size_t>(i * n + k)]),
                    static_cast<uint32_t>(d.b[static_cast<size_t>(k * n + j)]));
      out.push_back(static_cast<int32_t>(acc));
    }
  return out;
}

template <typename MulFn>
std::vector<int32_t> run_fir(const WorkloadData& d, MulFn&& mulf) {
  std::vector<int32_t> out;
  out.reserve(kFirSamples - 7);
  for (int n = 7; n < kFirSamples; ++n) {
    uint32_t acc = 0;
    for (int k = 0; k < 8; ++k)
      acc += mulf(static_cast<uint32_t>(
                      static_cast<int32_t>(d.samples[static_cast<size_t>(n - k)])),
                  static_cast<uint32_t>(kFirTaps[k]));
    out.push_back(static_cast<int32_t>(acc));
  }
  return out;
}

template <typename MulFn>
std::vector<int32_t> run_iir(const WorkloadData& d, MulFn&& mulf) {
  std::vector<int32_t> out;
  out.reserve(kIirSamples);
  uint32_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  for (int n = 0; n < kIirSamples; ++n) {
    const uint32_t x0 = static_cast<uint32_t>(
        static_cast<int32_t>(d.samples[static_cast<size_t>(n)]));
    uint32_t acc = mulf(x0, static_cast<uint32_t>(kIirB0));
    acc += mulf(x1, static_cast<uint32_t>(kIirB1));
    acc += mulf(x2, static_cast<uint32_t>(kIirB2));
    acc += mulf(y1, static_cast<uint32_t>(kIirA1));
    acc -= mulf(y2, static_cast<uint32_t>(kIirA2));
    const uint32_t y = static_cast<uint32_t>(static_cast<int32_t>(acc) >> 12);
    out.push_back(static_cast<int32_t>(y));
    x2 = x1;
    x1 = x0;
    y2 = y1;
    y1 = y;
  }
  return out;
}

template <typename MulFn>
std::vector<int32_t> run_factorial(const WorkloadData& d, MulFn&& mulf) {
  uint32_t acc = 1;
  for (int t = d.n; t > 1; --t)
    acc = mulf(acc, static_cast<uint32_t>(t));
  return {static_cast<int32_t>(acc)};
}

template <typename MulFn>
std::vector<int32_t> run_kernel(Workload w, const WorkloadData& d,
                                MulFn&& mulf) {
  switch (w) {
    case Workload::Conv2d3x3: return run_conv(d, 3, kConv3Taps, mulf);
    case Workload::Conv2d6x6: {
      int32_t taps[36];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) taps[i * 6 + j] = kConv6Vec[i] * kConv6Vec[j];
      return run_conv(d, 6, taps, mulf);
    }
    case Workload::Matmul3x3: return run_matmul(d, 3, mulf);
    case Workload::Matmul6x6: return run_matmul(d, 6, mulf);
    case Workload::FirInt: return run_fir(d, mulf);
    case Workload::IirInt: return run_iir(d, mulf);
    case Workload::Factorial: return run_factorial(d, mulf);
  }
  throw std::invalid_argument("unknown workload");
}

void reject_overrides(const WorkloadInput& in) {
  if (!in.a_override.empty() || !in.b_override.empty())
    throw std::invalid_argument(
        "explicit operands are only supported for the matmul kernels");
}

std::vector<int32_t> seeded_matrix(std::mt19937_64& rng, int n) {
  std::vector<int32_t> m(static_cast<size_t>(n) * n);
  for (auto& v : m) v = static_cast<int32_t>(rng() & 0xFF);
  return m;
}

// ---- guest program emission ----------------------------------------------

constexpr uint32_t kCodeBase = 0x1000;
constexpr uint32_t kDataBase = 0x10000;

void emit_preamble(ProgramBuilder& b, uint32_t mulcsr) {
  b.li(reg::t6, static_cast<int32_t>(mulcsr));
  b.csrrw(reg::zero, kMulCsrAddr, reg::t6);
}

void emit_exit(ProgramBuilder& b) {
  b.li(reg::a7, 93);
  b.li(reg::a0, 0);
  b.ecall();
}

std::vector<uint32_t> pack_words(const std::vector<int32_t>& v) {
  std::vector<uint32_t> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = static_cast<uint32_t>(v[i]);
  return w;
}

std::vector<uint32_t> pack_halfwords(const std::vector<int16_t>& v) {
  std::vector<uint32_t> w((v.size() + 1) / 2, 0);
  for (size_t i = 0; i < v.size(); ++i) {
    const uint32_t h = static_cast<uint16_t>(v[i]);
    w[i / 2] |= h << (16 * (i % 2));
  }
  return w;
}

// Shared conv loop; coefficient values are pre-loaded into registers by
// value (each distinct value once), looked up per tap.
void emit_conv(ProgramBuilder& b, int kdim, const int32_t* taps,
               uint32_t out_off) {
  const int out_dim = conv_out_dim(kdim);
  // Map each distinct coefficient value to a register from s5..s10.
  std::vector<std::pair<int32_t, unsigned>> coef_regs;
  const unsigned pool[] = {reg::s5, reg::s6, reg::s7, reg::s8, reg::s9,
                           reg::s10};
  for (int t = 0; t < kdim * kdim; ++t) {
    bool seen = false;
    for (const auto& cr : coef_regs) seen = seen || cr.first == taps[t];
    if (!seen) {
      if (coef_regs.size() >= std::size(pool))
        throw std::logic_error("coefficient register pool exhausted");
      coef_regs.emplace_back(taps[t], pool[coef_regs.size()]);
      b.li(coef_regs.back().second, taps[t]);
    }
  }
  auto coef_reg = [&](int32_t val) -> unsigned {
    for (const auto& cr : coef_regs)
      if (cr.first == val) return cr.second;
    throw std::logic_error("missing coefficient register");
  };

  b.li(reg::s0, static_cast<int32_t>(kDataBase));            // image row ptr
  b.li(reg::s1, static_cast<int32_t>(kDataBase + out_off));  // output ptr
  b.li(reg::s2, 0);                                          // i
  b.li(reg::s4, out_dim);
  b.label("loop_i");
  b.li(reg::s3, 0);  // j
  b.mv(reg::t0, reg::s0);
  b.label("loop_j");
  b.li(reg::t1, 0);  // acc
  for (int ki = 0; ki < kdim; ++ki)
    for (int kj = 0; kj < kdim; ++kj) {
      b.lw(reg::t2, reg::t0, ki * kImgDim * 4 + kj * 4);
      b.mul(reg::t2, reg::t2, coef_reg(taps[ki * kdim + kj]));
      b.add(reg::t1, reg::t1, reg::t2);
    }
  b.sw(reg::t1, reg::s1, 0);
  b.addi(reg::s1, reg::s1, 4);
  b.addi(reg::t0, reg::t0, 4);
  b.addi(reg::s3, reg::s3, 1);
  b.blt(reg::s3, reg::s4, "loop_j");
  b.addi(reg::s0, reg::s0, kImgDim * 4);
  b.addi(reg::s2, reg::s2, 1);
  b.blt(reg::s2, reg::s4, "loop_i");
}

// 3x3 matrix multiply with both operands held in registers and the nine
// inner products fully unrolled: A in x5..x13, B in x14..x22, accumulator
// x23, product x24, data base x25.
void emit_matmul3(ProgramBuilder& b) {
  b.lui(25, kDataBase);
  for (unsigned k = 0; k < 9; ++k)
    b.lw(5 + k, 25, static_cast<int32_t>(4 * k));
  for (unsigned k = 0; k < 9; ++k)
    b.lw(14 + k, 25, static_cast<int32_t>(36 + 4 * k));
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      b.mul(23, 5 + i * 3 + 0, 14 + 0 * 3 + j);
      b.mul(24, 5 + i * 3 + 1, 14 + 1 * 3 + j);
      b.add(23, 23, 24);
      b.mul(24, 5 + i * 3 + 2, 14 + 2 * 3 + j);
      b.add(23, 23, 24);
      b.sw(23, 25, static_cast<int32_t>(72 + 4 * (i * 3 + j)));
    }
}

void emit_matmul6(ProgramBuilder& b) {
  b.lui(reg::s0, kDataBase);
  b.mv(reg::s1, reg::s0);           // &A[i][0]
  b.addi(reg::s2, reg::s0, 288);    // output ptr
  b.li(reg::s6, 6);
  b.li(reg::s3, 0);  // i
  b.label("loop_i");
  b.li(reg::s4, 0);  // j
  b.label("loop_j");
  b.mv(reg::t0, reg::s1);      // a ptr, walks the row
  b.slli(reg::t1, reg::s4, 2);
  b.add(reg::t1, reg::t1, reg::s0);
  b.addi(reg::t1, reg::t1, 144);  // b ptr = &B[0][j], walks the column
  b.li(reg::t2, 0);               // acc
  b.li(reg::s5, 0);               // k
  b.label("loop_k");
  b.lw(reg::t3, reg::t0, 0);
  b.lw(reg::t4, reg::t1, 0);
  b.mul(reg::t3, reg::t3, reg::t4);
  b.add(reg::t2, reg::t2, reg::t3);
  b.addi(reg::t0, reg::t0, 4);
  b.addi(reg::t1, reg::t1, 24);
  b.addi(reg::s5, reg::s5, 1);
  b.blt(reg::s5, reg::s6, "loop_k");
  b.sw(reg::t2, reg::s2, 0);
  b.addi(reg::s2, reg::s2, 4);
  b.addi(reg::s4, reg::s4, 1);
  b.blt(reg::s4, reg::s6, "loop_j");
  b.addi(reg::s1, reg::s1, 24);
  b.addi(reg::s3, reg::s3, 1);
  b.blt(reg::s3, reg::s6, "loop_i");
}

void emit_fir(ProgramBuilder& b, uint32_t out_off) {
  b.lui(reg::s0, kDataBase);  // &x[n-7], samples packed as halfwords
  b.li(reg::s1, static_cast<int32_t>(kDataBase + out_off));
  const unsigned tap_regs[] = {reg::s4, reg::s5, reg::s6,  reg::s7,
                               reg::s8, reg::s9, reg::s10, reg::s11};
  for (int k = 0; k < 8; ++k) b.li(tap_regs[k], kFirTaps[k]);
  b.li(reg::s2, 0);  // output index
  b.li(reg::s3, kFirSamples - 7);
  b.label("loop_n");
  b.li(reg::t1, 0);
  for (int k = 0; k < 8; ++k) {
    b.lh(reg::t0, reg::s0, (7 - k) * 2);  // x[n-k]
    b.mul(reg::t0, reg::t0, tap_regs[k]);
    b.add(reg::t1, reg::t1, reg::t0);
  }
  b.sw(reg::t1, reg::s1, 0);
  b.addi(reg::s0, reg::s0, 2);
  b.addi(reg::s1, reg::s1, 4);
  b.addi(reg::s2, reg::s2, 1);
  b.blt(reg::s2, reg::s3, "loop_n");
}

void emit_iir(ProgramBuilder& b, uint32_t out_off) {
  b.lui(reg::s0, kDataBase);
  b.li(reg::s1, static_cast<int32_t>(kDataBase + out_off));
  b.li(reg::s4, kIirB0);   // also b2
  b.li(reg::s5, kIirB1);
  b.li(reg::s6, kIirA1);
  b.li(reg::s7, kIirA2);
  b.li(reg::s8, 0);   // x[n-1]
  b.li(reg::s9, 0);   // x[n-2]
  b.li(reg::s10, 0);  // y[n-1]
  b.li(reg::s11, 0);  // y[n-2]
  b.li(reg::s2, 0);
  b.li(reg::s3, kIirSamples);
  b.label("loop_n");
  b.lh(reg::t0, reg::s0, 0);          // x[n]
  b.mul(reg::t1, reg::t0, reg::s4);   // acc = x0*b0
  b.mul(reg::t2, reg::s8, reg::s5);
  b.add(reg::t1, reg::t1, reg::t2);   // + x1*b1
  b.mul(reg::t2, reg::s9, reg::s4);
  b.add(reg::t1, reg::t1, reg::t2);   // + x2*b2
  b.mul(reg::t2, reg::s10, reg::s6);
  b.add(reg::t1, reg::t1, reg::t2);   // + y1*a1
  b.mul(reg::t2, reg::s11, reg::s7);
  b.sub(reg::t1, reg::t1, reg::t2);   // - y2*a2
  b.srai(reg::t1, reg::t1, 12);
  b.sw(reg::t1, reg::s1, 0);
  b.mv(reg::s9, reg::s8);
  b.mv(reg::s8, reg::t0);
  b.mv(reg::s11, reg::s10);
  b.mv(reg::s10, reg::t1);
  b.addi(reg::s0, reg::s0, 2);
  b.addi(reg::s1, reg::s1, 4);
  b.addi(reg::s2, reg::s2, 1);
  b.blt(reg::s2, reg::s3, "loop_n");
}

void emit_factorial(ProgramBuilder& b, int n) {
  b.li(reg::a0, 1);
  b.li(reg::t0, n);
  b.li(reg::t1, 1);
  b.label("loop");
  b.bge(reg::t1, reg::t0, "done");
  b.mul(reg::a0, reg::a0, reg::t0);
  b.addi(reg::t0, reg::t0, -1);
  b.j("loop");
  b.label("done");
  b.lui(reg::t2, kDataBase);
  b.sw(reg::a0, reg::t2, 0);
}

}  // namespace

std::string_view workload_name(Workload w) {
  switch (w) {
    case Workload::Conv2d3x3: return "conv2d3x3";
    case Workload::Conv2d6x6: return "conv2d6x6";
    case Workload::Matmul3x3: return "matmul3x3";
    case Workload::Matmul6x6: return "matmul6x6";
    case Workload::FirInt: return "fir_int";
    case Workload::IirInt: return "iir_int";
    case Workload::Factorial: return "factorial";
  }
  return "unknown";
}

std::optional<Workload> workload_from_name(std::string_view name) {
  for (Workload w : kAllWorkloads)
    if (workload_name(w) == name) return w;
  return std::nullopt;
}

WorkloadData generate_data(Workload w, const WorkloadInput& in) {
  std::mt19937_64 rng(in.seed);
  WorkloadData d;
  switch (w) {
    case Workload::Conv2d3x3:
    case Workload::Conv2d6x6:
      reject_overrides(in);
      d.img.resize(kImgDim * kImgDim);
      for (auto& v : d.img) v = static_cast<int32_t>(rng() & 0xFF);
      break;
    case Workload::Matmul3x3:
    case Workload::Matmul6x6: {
      const int n = matmul_dim(w);
      const size_t want = static_cast<size_t>(n) * n;
      if (!in.a_override.empty() && in.a_override.size() != want)
        throw std::invalid_argument("explicit operand A has wrong dimensions");
      if (!in.b_override.empty() && in.b_override.size() != want)
        throw std::invalid_argument("explicit operand B has wrong dimensions");
      d.a = in.a_override.empty() ? seeded_matrix(rng, n) : in.a_override;
      d.b = in.b_override.empty() ? seeded_matrix(rng, n) : in.b_override;
      break;
    }
    case Workload::FirInt:
    case Workload::IirInt:
      reject_overrides(in);
      d.samples.resize(w == Workload::FirInt ? kFirSamples : kIirSamples);
      for (auto& v : d.samples) v = static_cast<int16_t>(rng());
      break;
    case Workload::Factorial:
      reject_overrides(in);
      d.n = in.seed == 0 ? 10
                         : static_cast<int>(std::min<uint64_t>(12, in.seed));
      break;
  }
  return d;
}

QualityReport compare_outputs(Workload w, const std::vector<int32_t>& exact,
                              const std::vector<int32_t>& configured,
                              CompressorKind kind, uint32_t mulcsr,
                              uint64_t seed) {
  if (exact.size() != configured.size() || exact.empty())
    throw std::invalid_argument("output arrays must be nonempty and same size");
  double se = 0, peak = 0, max_rel = 0;
  for (size_t i = 0; i < exact.size(); ++i) {
    const double diff =
        static_cast<double>(configured[i]) - static_cast<double>(exact[i]);
    se += diff * diff;
    peak = std::max(peak, std::abs(static_cast<double>(exact[i])));
    if (exact[i] != 0)
      max_rel = std::max(max_rel,
                         std::abs(diff) / std::abs(static_cast<double>(exact[i])));
  }
  QualityReport q;
  q.workload = workload_name(w);
  q.unit = multiplier_name(kind);
  q.mulcsr = mulcsr;
  q.seed = seed;
  q.elements = exact.size();
  q.mse = se / static_cast<double>(exact.size());
  q.psnr_db = q.mse == 0 ? std::numeric_limits<double>::infinity()
                         : 10.0 * std::log10(peak * peak / q.mse);
  q.max_rel_err = max_rel;
  return q;
}

std::string to_json(const QualityReport& q) {
  nlohmann::json j;
  j["workload"] = q.workload;
  j["unit"] = q.unit;
  j["mulcsr"] = q.mulcsr;
  j["seed"] = q.seed;
  j["elements"] = q.elements;
  j["mse"] = q.mse;
  if (std::isfinite(q.psnr_db))
    j["psnr_db"] = q.psnr_db;
  else
    j["psnr_db"] = nullptr;
  j["max_rel_err"] = q.max_rel_err;
  return j.dump();
}

std::string outputs_csv(const std::vector<int32_t>& exact,
                        const std::vector<int32_t>& configured) {
  if (exact.size() != configured.size())
    throw std::invalid_argument("output arrays must be the same size");
  std::string s = "index,exact,configured\n";
  char line[64];
  for (size_t i = 0; i < exact.size(); ++i) {
    snprintf(line, sizeof line, "%zu,%d,%d\n", i, exact[i], configured[i]);
    s += line;
  }
  return s;
}

NativeRun run_native(Workload w, const WorkloadInput& in, CompressorKind kind,
                     uint32_t mulcsr) {
  const WorkloadData d = generate_data(w, in);
  NativeRun r;
  r.exact = run_kernel(w, d, [](uint32_t a, uint32_t b) { return a * b; });
  const HierConfig cfg = config_from_csr(kind, decode_mulcsr(mulcsr));
  r.configured = run_kernel(w, d, [&cfg](uint32_t a, uint32_t b) {
    return mul_signed(a, b, MulOp::Mul, cfg);
  });
  r.quality = compare_outputs(w, r.exact, r.configured, kind, mulcsr, in.seed);
  return r;
}

SimProgram build_sim_program(Workload w, const WorkloadInput& in,
                             uint32_t mulcsr) {
  const WorkloadData d = generate_data(w, in);
  SimProgram p;
  p.workload = w;
  p.mulcsr = mulcsr;
  p.code_base = kCodeBase;
  p.data_base = kDataBase;

  ProgramBuilder b;
  emit_preamble(b, mulcsr);
  switch (w) {
    case Workload::Conv2d3x3: {
      p.data = pack_words(d.img);
      p.output_offset = kImgDim * kImgDim * 4;
      p.output_words = 14 * 14;
      emit_conv(b, 3, kConv3Taps, p.output_offset);
      break;
    }
    case Workload::Conv2d6x6: {
      int32_t taps[36];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) taps[i * 6 + j] = kConv6Vec[i] * kConv6Vec[j];
      p.data = pack_words(d.img);
      p.output_offset = kImgDim * kImgDim * 4;
      p.output_words = 11 * 11;
      emit_conv(b, 6, taps, p.output_offset);
      break;
    }
    case Workload::Matmul3x3:
      p.data = pack_words(d.a);
      for (uint32_t v : pack_words(d.b)) p.data.push_back(v);
      p.output_offset = 72;
      p.output_words = 9;
      emit_matmul3(b);
      break;
    case Workload::Matmul6x6:
      p.data = pack_words(d.a);
      for (uint32_t v : pack_words(d.b)) p.data.push_back(v);
      p.output_offset = 288;
      p.output_words = 36;
      emit_matmul6(b);
      break;
    case Workload::FirInt:
      p.data = pack_halfwords(d.samples);
      p.output_offset = kFirSamples * 2;
      p.output_words = kFirSamples - 7;
      emit_fir(b, p.output_offset);
      break;
    case Workload::IirInt:
      p.data = pack_halfwords(d.samples);
      p.output_offset = kIirSamples * 2;
      p.output_words = kIirSamples;
      emit_iir(b, p.output_offset);
      break;
    case Workload::Factorial:
      p.output_offset = 0;
      p.output_words = 1;
      emit_factorial(b, d.n);
      break;
  }
  emit_exit(b);
  p.code = b.build();
  return p;
}

void load_program(Simulator& sim, const SimProgram& p) {
  sim.load_words(p.code_base, p.code);
  sim.load_words(p.data_base, p.data);
  sim.set_pc(p.code_base);
}

std::vector<int32_t> read_outputs(const Simulator& sim, const SimProgram& p) {
  std::vector<int32_t> out(p.output_words);
  for (uint32_t i = 0; i < p.output_words; ++i)
    out[i] = static_cast<int32_t>(
        sim.memory().load32(p.data_base + p.output_offset + 4 * i));
  return out;
}

}  // namespace axrv
