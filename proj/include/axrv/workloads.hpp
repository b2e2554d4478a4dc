#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axrv/mulhier.hpp"
#include "axrv/sim.hpp"

namespace axrv {

// Integer benchmark kernels runnable two ways: natively against the
// multiplier model (output-quality analysis) and as guest programs inside
// the simulator (cycle/energy analysis).  Both paths route every multiply
// through the same configured multiplier, so identical configurations give
// bit-identical outputs.
enum class Workload : uint8_t {
  Conv2d3x3,
  Conv2d6x6,
  Matmul3x3,
  Matmul6x6,
  FirInt,
  IirInt,
  Factorial,
};

inline constexpr Workload kAllWorkloads[] = {
    Workload::Conv2d3x3, Workload::Conv2d6x6, Workload::Matmul3x3,
    Workload::Matmul6x6, Workload::FirInt,    Workload::IirInt,
    Workload::Factorial,
};

std::string_view workload_name(Workload w);
std::optional<Workload> workload_from_name(std::string_view name);

// Input specification.  Data is derived deterministically from the seed:
// conv/matmul operands are uniform in [0,255] (8-bit-like data), FIR/IIR
// samples are full-range 16-bit, and factorial interprets the seed as its
// argument n (seed 0 means n=10; otherwise clamped to [1,12] so n! fits in
// 32 bits).  The matmul kernels optionally take explicit row-major
// operands instead of seeded ones.
struct WorkloadInput {
  WorkloadInput() = default;
  explicit WorkloadInput(uint64_t s) : seed(s) {}

  uint64_t seed = 1;
  std::vector<int32_t> a_override;
  std::vector<int32_t> b_override;
};

// Generated input data; which fields are populated depends on the kernel.
struct WorkloadData {
  std::vector<int32_t> img;      // conv: 16x16 pixels, row-major
  std::vector<int32_t> a, b;     // matmul operands, row-major
  std::vector<int16_t> samples;  // fir/iir input signal
  int n = 0;                     // factorial argument
};

WorkloadData generate_data(Workload w, const WorkloadInput& in);

// Output-quality metrics of a configured run against the exact run.
// psnr_db uses max|exact| as the peak level and is +infinity when the
// outputs match exactly (serialized as JSON null).  max_rel_err is taken
// over elements with nonzero exact value.
struct QualityReport {
  std::string workload;
  std::string unit;  // "exact" | "dfm" | "ssm"
  uint32_t mulcsr = 0;
  uint64_t seed = 0;
  size_t elements = 0;
  double mse = 0.0;
  double psnr_db = 0.0;
  double max_rel_err = 0.0;
};

QualityReport compare_outputs(Workload w, const std::vector<int32_t>& exact,
                              const std::vector<int32_t>& configured,
                              CompressorKind kind, uint32_t mulcsr,
                              uint64_t seed);

std::string to_json(const QualityReport& q);

// "index,exact,configured" rows for plotting.
std::string outputs_csv(const std::vector<int32_t>& exact,
                        const std::vector<int32_t>& configured);

struct NativeRun {
  std::vector<int32_t> exact;
  std::vector<int32_t> configured;
  QualityReport quality;
};

// Runs the kernel twice on the host — once with exact multiplies, once
// with multiplies routed through the (kind, mulcsr) configuration — and
// reports quality.  Throws std::invalid_argument on dimension mismatches
// in explicit operands.
NativeRun run_native(Workload w, const WorkloadInput& in, CompressorKind kind,
                     uint32_t mulcsr);

// Guest program image: code at code_base, input data at data_base, and
// output words at data_base + output_offset.  The program writes mulcsr
// to CSR 0x801 before the kernel and exits via ECALL 93 with code 0.
struct SimProgram {
  Workload workload = Workload::Factorial;
  uint32_t mulcsr = 0;
  uint32_t code_base = 0x1000;
  uint32_t data_base = 0x10000;
  std::vector<uint32_t> code;
  std::vector<uint32_t> data;
  uint32_t output_offset = 0;  // bytes from data_base
  uint32_t output_words = 0;
};

SimProgram build_sim_program(Workload w, const WorkloadInput& in,
                             uint32_t mulcsr);

// Copies code and data into guest memory and sets the entry pc.
void load_program(Simulator& sim, const SimProgram& p);

std::vector<int32_t> read_outputs(const Simulator& sim, const SimProgram& p);

}  // namespace axrv
