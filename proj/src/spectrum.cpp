#include "zzsim/spectrum.hpp"

#include <cstdio>

#include "zzsim/units.hpp"

namespace zzsim {

ZetaExact evaluate_zeta_exact(const DeviceParams& params, double omega_minus,
                              const HilbertSpace& space) {
  const auto h = build_hamiltonian(params, space, omega_minus);
  const auto labeled = label_states(diagonalize(h), space);

  static constexpr std::array<std::array<int, 4>, 4> kStates = {
      {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}}};
  ZetaExact out;
  std::array<double, 4> energy{};
  for (std::size_t i = 0; i < kStates.size(); ++i) {
    energy[i] = labeled.energy(kStates[i]);
    out.overlaps[i] = labeled.overlap_of(kStates[i]);
  }
  out.zeta = (energy[3] - energy[0]) - (energy[1] - energy[0]) - (energy[2] - energy[0]);
  return out;
}

double zeta_exact(const DeviceParams& params, double omega_minus, const HilbertSpace& space) {
  const ZetaExact z = evaluate_zeta_exact(params, omega_minus, space);
  if (!z.reliable()) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "hybridized computational state at omega_minus/2pi = %.6f GHz "
                  "(overlaps 0000=%.3f 1000=%.3f 0100=%.3f 1100=%.3f)",
                  units::to_ghz(omega_minus), z.overlaps[0], z.overlaps[1],
                  z.overlaps[2], z.overlaps[3]);
    throw HybridizationError(buf, {z.overlaps.begin(), z.overlaps.end()});
  }
  return z.zeta;
}

std::vector<ConvergenceRow> convergence_check(const DeviceParams& params, double omega_minus,
                                              const std::vector<std::array<int, 4>>& dims_list) {
  if (dims_list.size() < 2) throw DomainError("convergence_check needs at least two truncations");
  std::vector<ConvergenceRow> rows;
  std::size_t largest = 0;
  Eigen::Index largest_dim = 0;
  for (std::size_t i = 0; i < dims_list.size(); ++i) {
    const auto space = HilbertSpace::device(dims_list[i]);
    rows.push_back({dims_list[i], zeta_exact(params, omega_minus, space), 0.0});
    if (space.total_dim() > largest_dim) {
      largest_dim = space.total_dim();
      largest = i;
    }
  }
  for (auto& r : rows) r.diff_to_largest = std::abs(r.zeta - rows[largest].zeta);
  return rows;
}

}  // namespace zzsim
