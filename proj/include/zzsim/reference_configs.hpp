#pragma once

#include <array>
#include <string>

#include "zzsim/hilbert.hpp"

namespace zzsim {

/// Operating point of a reference configuration: parameters plus the
/// coupler frequency to evaluate them at.
struct ReferencePoint {
  DeviceParams params;
  double omega_minus = 0.0;  // rad/s
};

/// One of the four textbook coupler layouts (a)-(d). The sweep coordinate x
/// is the swept coupler's detuning from qubit 2, in rad/s. Qubit 2 sits at
/// 2pi x 5 GHz; zeta only depends on differences.
struct ReferenceConfig {
  char id;
  std::string description;
  double x_lo;  // rad/s
  double x_hi;
  std::array<int, 4> dims;  // truncation for exact diagonalization

  ReferencePoint at(double x) const;
  HilbertSpace space() const { return HilbertSpace::device(dims); }
  /// Smallest |omega_qubit - omega_coupler| over pairs with nonzero coupling.
  double min_coupled_detuning(double x) const;
  /// Largest coupling constant.
  double max_coupling() const;
};

const std::array<ReferenceConfig, 4>& reference_configs();
const ReferenceConfig& reference_config(char id);

}  // namespace zzsim
