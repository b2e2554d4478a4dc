#include "axrv/model.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axrv {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void set_u32(uint32_t& field, const std::string& value, const std::string& key) {
  size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(value, &pos, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("model config: bad value for " + key);
  }
  if (pos != value.size() || v > 0xFFFFFFFFul)
    throw std::invalid_argument("model config: bad value for " + key);
  field = static_cast<uint32_t>(v);
}

void set_pj(double& field, const std::string& value, const std::string& key) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("model config: bad value for " + key);
  }
  if (pos != value.size())
    throw std::invalid_argument("model config: bad value for " + key);
  if (v < 0)
    throw std::invalid_argument("model config: " + key + " must be >= 0");
  field = v;
}

}  // namespace

double TimingEnergyModel::mul_energy(CompressorKind unit,
                                     bool approx_active) const {
  switch (unit) {
    case CompressorKind::Exact:
      return epj_mul_exact;
    case CompressorKind::Ssc:
      return approx_active ? epj_mul_ssm_approx : epj_mul_ssm_exact;
    case CompressorKind::Dfc:
      return approx_active ? epj_mul_dfm_approx : epj_mul_dfm_exact;
  }
  return epj_mul_exact;
}

TimingEnergyModel parse_model_config(const std::string& text) {
  TimingEnergyModel m;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("model config: line " +
                                  std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "cycles_base") set_u32(m.cycles_base, value, key);
    else if (key == "cycles_load") set_u32(m.cycles_load, value, key);
    else if (key == "cycles_store") set_u32(m.cycles_store, value, key);
    else if (key == "cycles_branch_taken_penalty")
      set_u32(m.cycles_branch_taken_penalty, value, key);
    else if (key == "cycles_mul") set_u32(m.cycles_mul, value, key);
    else if (key == "cycles_div") set_u32(m.cycles_div, value, key);
    else if (key == "epj_base") set_pj(m.epj_base, value, key);
    else if (key == "epj_mul_exact") set_pj(m.epj_mul_exact, value, key);
    else if (key == "epj_mul_ssm_exact")
      set_pj(m.epj_mul_ssm_exact, value, key);
    else if (key == "epj_mul_ssm_approx")
      set_pj(m.epj_mul_ssm_approx, value, key);
    else if (key == "epj_mul_dfm_exact")
      set_pj(m.epj_mul_dfm_exact, value, key);
    else if (key == "epj_mul_dfm_approx")
      set_pj(m.epj_mul_dfm_approx, value, key);
    else
      throw std::invalid_argument("model config: unknown key '" + key + "'");
  }
  return m;
}

TimingEnergyModel load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str());
}

std::string to_config_text(const TimingEnergyModel& m) {
  char buf[1024];
  std::snprintf(
      buf, sizeof buf,
      "# timing/energy model (calibrated constants, not measurements)\n"
      "# cycle costs per retired instruction class\n"
      "cycles_base = %u\n"
      "cycles_load = %u\n"
      "cycles_store = %u\n"
      "cycles_branch_taken_penalty = %u\n"
      "cycles_mul = %u\n"
      "cycles_div = %u\n"
      "# energy per retired instruction, picojoules\n"
      "epj_base = %.9g\n"
      "epj_mul_exact = %.9g\n"
      "epj_mul_ssm_exact = %.9g\n"
      "epj_mul_ssm_approx = %.9g\n"
      "epj_mul_dfm_exact = %.9g\n"
      "epj_mul_dfm_approx = %.9g\n",
      m.cycles_base, m.cycles_load, m.cycles_store,
      m.cycles_branch_taken_penalty, m.cycles_mul, m.cycles_div, m.epj_base,
      m.epj_mul_exact, m.epj_mul_ssm_exact, m.epj_mul_ssm_approx,
      m.epj_mul_dfm_exact, m.epj_mul_dfm_approx);
  return buf;
}

}  // namespace axrv
