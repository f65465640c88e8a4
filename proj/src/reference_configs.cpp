#include "zzsim/reference_configs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zzsim/errors.hpp"
#include "zzsim/units.hpp"

namespace zzsim {

namespace {

using units::from_ghz;
using units::from_mhz;

constexpr double kOmega2Ghz = 5.0;

DeviceParams base(double delta12_mhz) {
  DeviceParams p;
  p.omega_2 = from_ghz(kOmega2Ghz);
  p.omega_1 = p.omega_2 + from_mhz(delta12_mhz);
  p.alpha_1 = p.alpha_2 = from_mhz(350);
  return p;
}

}  // namespace

ReferencePoint ReferenceConfig::at(double x) const {
  DeviceParams p;
  double omega_minus = 0.0;
  switch (id) {
    case 'a':  // one coupler between far-detuned qubits; bus parked far away, uncoupled
      p = base(1500);
      p.alpha_minus = from_mhz(750);
      p.g_1minus = p.g_2minus = from_mhz(140);
      p.omega_plus = p.omega_2 + from_ghz(10);
      omega_minus = p.omega_2 + x;
      break;
    case 'b':
    case 'd':  // bus above, tunable coupler below
      p = base(id == 'b' ? 250 : 450);
      p.alpha_minus = from_mhz(750);
      p.omega_plus = p.omega_2 + from_mhz(1800);
      p.g_1plus = p.g_2plus = from_mhz(160);
      p.g_1minus = p.g_2minus = from_mhz(140);
      omega_minus = p.omega_2 + x;
      break;
    case 'c':  // single anharmonic coupler above; lower coupler parked, uncoupled
      p = base(250);
      p.alpha_plus = from_mhz(750);
      p.g_1plus = p.g_2plus = from_mhz(120);
      p.omega_plus = p.omega_2 + x;
      omega_minus = p.omega_2 - from_ghz(3);
      break;
    default:
      throw DomainError(std::string("unknown reference configuration '") + id + "'");
  }
  p.name = std::string("config_") + id;
  p.omega_minus_max = omega_minus;
  return {p, omega_minus};
}

double ReferenceConfig::min_coupled_detuning(double x) const {
  const ReferencePoint r = at(x);
  double best = std::numeric_limits<double>::infinity();
  for (Mode q : {Mode::Q1, Mode::Q2})
    for (Mode c : {Mode::BusPlus, Mode::CouplerMinus})
      if (r.params.g(q, c) != 0.0)
        best = std::min(best, std::abs(r.params.omega(q, r.omega_minus) -
                                       r.params.omega(c, r.omega_minus)));
  return best;
}

double ReferenceConfig::max_coupling() const {
  const DeviceParams p = at(0.5 * (x_lo + x_hi)).params;
  return std::max({p.g_1plus, p.g_2plus, p.g_1minus, p.g_2minus});
}

const std::array<ReferenceConfig, 4>& reference_configs() {
  static const std::array<ReferenceConfig, 4> configs = {{
      {'a', "qubits far apart, one coupler in between", from_ghz(0.05), from_ghz(1.45),
       {4, 4, 3, 4}},
      {'b', "straddling qubits, bus above, coupler below", from_ghz(-3.0), from_ghz(-0.05),
       {4, 4, 3, 4}},
      {'c', "straddling qubits, one coupler above", from_ghz(0.3), from_ghz(3.0), {4, 4, 4, 2}},
      {'d', "non-straddling qubits, bus above, coupler below", from_ghz(-3.0), from_ghz(-0.05),
       {4, 4, 3, 4}},
  }};
  return configs;
}

const ReferenceConfig& reference_config(char id) {
  for (const auto& c : reference_configs())
    if (c.id == id) return c;
  throw DomainError(std::string("unknown reference configuration '") + id + "'");
}

}  // namespace zzsim
