// Command-line front end: compressor truth tables, multiplier error
// sweeps, single simulator runs, and the benchmark suite.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axrv/compressor.hpp"
#include "axrv/elf.hpp"
#include "axrv/errorlab.hpp"
#include "axrv/model.hpp"
#include "axrv/mul8.hpp"
#include "axrv/sim.hpp"
#include "axrv/workloads.hpp"
#include "json.hpp"

namespace {

// Exit codes, sysexits-style: usage errors, bad input, runtime failures.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitRuntime = 70;

uint32_t parse_u32(const std::string& s) {
  size_t pos = 0;
  const unsigned long v = std::stoul(s, &pos, 0);
  if (pos != s.size() || v > 0xFFFFFFFFul)
    throw std::invalid_argument("not a 32-bit value: " + s);
  return static_cast<uint32_t>(v);
}

axrv::CompressorKind unit_from_name(const std::string& name) {
  if (name == "exact") return axrv::CompressorKind::Exact;
  if (name == "dfm") return axrv::CompressorKind::Dfc;
  return axrv::CompressorKind::Ssc;
}

int popcount5(uint8_t packed) {
  int n = 0;
  for (int b = 0; b < 5; ++b) n += (packed >> b) & 1;
  return n;
}

// All 32 input rows per kind with the exact-mode (er=1) and
// approximate-mode (er=0) outputs side by side.
int cmd_compressors() {
  printf("# reconfigurable 4:2 compressor behavior tables\n");
  printf(
      "# columns: x1 x2 x3 x4 cin | er=1: cout carry sum | er=0: cout carry "
      "sum | ed\n");
  for (const auto kind : {axrv::CompressorKind::Exact, axrv::CompressorKind::Dfc,
                          axrv::CompressorKind::Ssc}) {
    printf("[%s]\n", axrv::to_string(kind));
    for (const auto& row : axrv::behavior_table(kind)) {
      const axrv::Bit x1 = (row.input >> 4) & 1, x2 = (row.input >> 3) & 1,
                      x3 = (row.input >> 2) & 1, x4 = (row.input >> 1) & 1,
                      cin = row.input & 1;
      const auto ex = axrv::compress(kind, x1, x2, x3, x4, cin, 1);
      printf("%u %u %u %u %u | %u %u %u | %u %u %u | %+d\n", x1, x2, x3, x4,
             cin, ex.cout, ex.carry, ex.sum, row.out.cout, row.out.carry,
             row.out.sum, row.ed);
    }
    // Exact-mode check line: er=1 must have zero erroneous rows.
    int er1_errors = 0;
    for (uint8_t packed = 0; packed < 32; ++packed) {
      const auto out =
          axrv::compress(kind, (packed >> 4) & 1, (packed >> 3) & 1,
                         (packed >> 2) & 1, (packed >> 1) & 1, packed & 1, 1);
      if (static_cast<int>(out.value()) != popcount5(packed)) ++er1_errors;
    }
    printf("# %s: er=0 erroneous rows: %zu, er=1 erroneous rows: %d\n",
           axrv::to_string(kind), axrv::error_table(kind).size(), er1_errors);
  }
  return kExitOk;
}

int cmd_sweep(const std::string& kind_name, const std::string& out_path) {
  const axrv::CompressorKind kind = unit_from_name(kind_name);
  const auto sweep = axrv::sweep8(kind);
  std::ofstream os(out_path);
  if (!os) {
    fprintf(stderr, "axcli: cannot open %s for writing\n", out_path.c_str());
    return kExitInput;
  }
  axrv::write_sweep_csv(os, kind, axrv::kDefaultErMapping, sweep);
  os.flush();
  if (!os) {
    fprintf(stderr, "axcli: write to %s failed\n", out_path.c_str());
    return kExitInput;
  }
  printf("# sweep kind=%s rows=%zu out=%s\n", kind_name.c_str(), sweep.size(),
         out_path.c_str());
  return kExitOk;
}

struct RunFlags {
  std::string elf_path;
  std::string workload;
  std::string mulcsr = "0";
  std::string unit = "ssm";
  std::string isa = "rv32im";
  std::string model_path;
  uint64_t seed = 1;
  uint64_t max_instructions = uint64_t{1} << 32;
};

int cmd_run(const RunFlags& f) {
  const uint32_t csr = parse_u32(f.mulcsr);
  axrv::SimOptions options;
  options.mul_unit = unit_from_name(f.unit);
  options.rv32e = f.isa == "rv32em";
  if (!f.model_path.empty())
    options.model = axrv::load_model_config(f.model_path);

  std::optional<axrv::Workload> workload;
  if (!f.workload.empty()) {
    workload = axrv::workload_from_name(f.workload);
    if (!workload) {
      fprintf(stderr, "axcli: unknown workload '%s'\n", f.workload.c_str());
      return kExitInput;
    }
    if (options.rv32e) {
      // The bundled kernels exit through ECALL with the code in a7 (x17),
      // which does not exist on the 16-register ISA.
      fprintf(stderr, "axcli: bundled workloads require --isa rv32im\n");
      return kExitInput;
    }
  }

  printf("# run unit=%s isa=%s mulcsr=0x%08" PRIX32
         " seed=%" PRIu64 " max_instructions=%" PRIu64 " source=%s model=%s\n",
         f.unit.c_str(), f.isa.c_str(), csr, f.seed, f.max_instructions,
         workload ? f.workload.c_str() : f.elf_path.c_str(),
         f.model_path.empty() ? "builtin" : f.model_path.c_str());

  axrv::Simulator sim(options);
  axrv::SimProgram program;
  if (workload) {
    program = axrv::build_sim_program(*workload, axrv::WorkloadInput(f.seed), csr);
    axrv::load_program(sim, program);
  } else {
    sim.load_image(axrv::load_elf_file(f.elf_path));
    // Initial CSR value, legalized the way a hardware write would be.
    if (csr & 0x6u)
      printf("# note: circuit-select bits cleared (only circuit 00 exists)\n");
    sim.state().csrs[axrv::kMulCsrAddr] = csr & ~0x6u;
  }

  const axrv::RunReport report = sim.run(f.max_instructions);
  printf("%s\n", axrv::to_json(report).c_str());
  if (!sim.guest_stdout().empty())
    fwrite(sim.guest_stdout().data(), 1, sim.guest_stdout().size(), stdout);

  if (workload) {
    const axrv::NativeRun native =
        axrv::run_native(*workload, axrv::WorkloadInput(f.seed), options.mul_unit, csr);
    const std::vector<int32_t> outputs = axrv::read_outputs(sim, program);
    const axrv::QualityReport q = axrv::compare_outputs(
        *workload, native.exact, outputs, options.mul_unit, csr, f.seed);
    printf("%s\n", axrv::to_json(q).c_str());
  }

  if (report.reason == axrv::HaltReason::Exit ||
      report.reason == axrv::HaltReason::Ebreak)
    return report.exit_code;
  fprintf(stderr, "axcli: abnormal halt: %s\n", report.diagnostic.c_str());
  return kExitRuntime;
}

struct BenchConfig {
  const char* name;
  axrv::CompressorKind unit;
  uint32_t csr;
};

constexpr BenchConfig kBenchConfigs[] = {
    {"exact", axrv::CompressorKind::Exact, 0x00000000u},
    {"ssm_exact", axrv::CompressorKind::Ssc, 0x07FFFFF9u},
    {"ssm_approx", axrv::CompressorKind::Ssc, 0x00000001u},
};

int cmd_bench(const std::string& out_dir, const std::string& model_path,
              uint64_t seed) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    fprintf(stderr, "axcli: cannot create %s: %s\n", out_dir.c_str(),
            ec.message().c_str());
    return kExitInput;
  }
  axrv::TimingEnergyModel model;
  if (!model_path.empty()) model = axrv::load_model_config(model_path);

  printf("# bench suite=default seed=%" PRIu64 " out=%s model=%s\n", seed,
         out_dir.c_str(),
         model_path.empty() ? "builtin" : model_path.c_str());

  std::string summary =
      "workload,config,unit,mulcsr,instret,cycle,cpi,energy_pj,pj_per_instr,"
      "mul_count,mse,psnr_db,max_rel_err\n";
  for (axrv::Workload w : axrv::kAllWorkloads) {
    for (const BenchConfig& cfg : kBenchConfigs) {
      axrv::SimOptions options;
      options.mul_unit = cfg.unit;
      options.model = model;
      axrv::Simulator sim(options);
      const axrv::SimProgram program =
          axrv::build_sim_program(w, axrv::WorkloadInput(seed), cfg.csr);
      axrv::load_program(sim, program);
      const axrv::RunReport report = sim.run();
      if (report.reason != axrv::HaltReason::Exit || report.exit_code != 0) {
        fprintf(stderr, "axcli: %s/%s halted abnormally: %s\n",
                std::string(axrv::workload_name(w)).c_str(), cfg.name,
                report.diagnostic.c_str());
        return kExitRuntime;
      }
      const axrv::NativeRun native =
          axrv::run_native(w, axrv::WorkloadInput(seed), cfg.unit, cfg.csr);
      const axrv::QualityReport quality = axrv::compare_outputs(
          w, native.exact, axrv::read_outputs(sim, program), cfg.unit, cfg.csr,
          seed);

      nlohmann::json j;
      j["workload"] = std::string(axrv::workload_name(w));
      j["config"] = cfg.name;
      j["run"] = nlohmann::json::parse(axrv::to_json(report));
      j["quality"] = nlohmann::json::parse(axrv::to_json(quality));
      const fs::path file =
          fs::path(out_dir) /
          (std::string(axrv::workload_name(w)) + "_" + cfg.name + ".json");
      std::ofstream os(file);
      os << j.dump() << "\n";
      if (!os.flush()) {
        fprintf(stderr, "axcli: write to %s failed\n", file.string().c_str());
        return kExitInput;
      }

      char line[256];
      snprintf(line, sizeof line,
               "%s,%s,%s,0x%08" PRIX32 ",%" PRIu64 ",%" PRIu64
               ",%.6g,%.9g,%.9g,%" PRIu64 ",%.9g,%.9g,%.9g\n",
               std::string(axrv::workload_name(w)).c_str(), cfg.name,
               axrv::multiplier_name(cfg.unit), cfg.csr, report.instret,
               report.cycle, report.cpi, report.energy_pj,
               report.pj_per_instr, report.mul_count, quality.mse,
               quality.psnr_db, quality.max_rel_err);
      summary += line;
      printf("%-10s %-10s pj_per_instr=%.4f cpi=%.3f mse=%g\n",
             std::string(axrv::workload_name(w)).c_str(), cfg.name,
             report.pj_per_instr, report.cpi, quality.mse);
    }
  }
  const fs::path summary_path = fs::path(out_dir) / "summary.csv";
  std::ofstream os(summary_path);
  os << summary;
  if (!os.flush()) {
    fprintf(stderr, "axcli: write to %s failed\n",
            summary_path.string().c_str());
    return kExitInput;
  }
  printf("# wrote %s\n", summary_path.string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate-multiplier simulator toolkit"};
  app.require_subcommand(1);

  app.add_subcommand("compressors",
                     "dump the 4:2 compressor behavior tables");

  auto* sweep = app.add_subcommand(
      "sweep", "exhaustive 8-bit error sweep over all 256 Er masks");
  std::string sweep_kind = "ssm";
  std::string sweep_out;
  sweep->add_option("--kind", sweep_kind, "multiplier kind")
      ->check(CLI::IsMember({"dfm", "ssm"}));
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  auto* run = app.add_subcommand("run", "run one program on the simulator");
  RunFlags rf;
  auto* elf_opt = run->add_option("--elf", rf.elf_path, "ELF32 executable");
  auto* wl_opt =
      run->add_option("--workload", rf.workload, "bundled benchmark kernel");
  elf_opt->excludes(wl_opt);
  run->add_option("--mulcsr", rf.mulcsr,
                  "initial multiplier CSR value (0x-prefixed hex or decimal)");
  run->add_option("--unit", rf.unit, "multiplier hardware variant")
      ->check(CLI::IsMember({"exact", "dfm", "ssm"}));
  run->add_option("--isa", rf.isa, "instruction set")
      ->check(CLI::IsMember({"rv32im", "rv32em"}));
  run->add_option("--model", rf.model_path, "timing/energy model config");
  run->add_option("--seed", rf.seed, "workload data seed");
  run->add_option("--max-instructions", rf.max_instructions,
                  "instruction budget");

  auto* bench = app.add_subcommand(
      "bench", "run the full workload suite under the standard configs");
  std::string bench_suite = "default";
  std::string bench_out;
  std::string bench_model;
  uint64_t bench_seed = 1;
  bench->add_option("--suite", bench_suite, "suite name")
      ->check(CLI::IsMember({"default"}));
  bench->add_option("--out", bench_out, "output directory")->required();
  bench->add_option("--model", bench_model, "timing/energy model config");
  bench->add_option("--seed", bench_seed, "workload data seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("compressors")) return cmd_compressors();
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_kind, sweep_out);
    if (app.got_subcommand("run")) {
      if (rf.elf_path.empty() && rf.workload.empty()) {
        fprintf(stderr, "axcli: run needs --elf or --workload\n");
        return kExitUsage;
      }
      return cmd_run(rf);
    }
    if (app.got_subcommand("bench"))
      return cmd_bench(bench_out, bench_model, bench_seed);
  } catch (const std::invalid_argument& e) {  // bad flag values, bad configs
    fprintf(stderr, "axcli: %s\n", e.what());
    return kExitInput;
  } catch (const std::out_of_range& e) {
    fprintf(stderr, "axcli: %s\n", e.what());
    return kExitInput;
  } catch (const std::runtime_error& e) {  // ElfError, unreadable files
    fprintf(stderr, "axcli: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    fprintf(stderr, "axcli: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
