#pragma once

#include <cstdint>
#include <string>

#include "axrv/compressor.hpp"

namespace axrv {

// Additive per-instruction timing/energy model.  Cycle costs are per
// retired instruction class; energy is picojoules per retired instruction.
// A multiply contributes the constant of the active multiplier class
// instead of the base constant; every other instruction contributes the
// base constant.  These are calibrated model parameters, not measurements.
struct TimingEnergyModel {
  uint32_t cycles_base = 1;
  uint32_t cycles_load = 1;
  uint32_t cycles_store = 1;
  // extra cycles added to taken branches and to JAL/JALR (refetch bubble)
  uint32_t cycles_branch_taken_penalty = 1;
  uint32_t cycles_mul = 4;
  uint32_t cycles_div = 32;

  double epj_base = 0.34;
  double epj_mul_exact = 9.355;
  double epj_mul_ssm_exact = 4.465;
  double epj_mul_ssm_approx = 3.013;
  double epj_mul_dfm_exact = 5.032;
  double epj_mul_dfm_approx = 2.557;

  // Energy of one multiply on the given multiplier unit; approx_active
  // means at least one Er bit of the effective configuration is 0.
  double mul_energy(CompressorKind unit, bool approx_active) const;

  friend bool operator==(const TimingEnergyModel&,
                         const TimingEnergyModel&) = default;
};

// Parses flat `key = value` text ('#' starts a comment, blank lines
// ignored).  Unknown keys, unparsable values, and negative costs are
// rejected with std::invalid_argument.  Keys match the field names above
// (e.g. "cycles_mul", "epj_mul_ssm_approx"); omitted keys keep defaults.
TimingEnergyModel parse_model_config(const std::string& text);

// Loads and parses a config file; std::runtime_error if unreadable.
TimingEnergyModel load_model_config(const std::string& path);

// Canonical config text; parse_model_config(to_config_text(m)) == m.
std::string to_config_text(const TimingEnergyModel& m);

}  // namespace axrv
