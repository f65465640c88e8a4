#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "support.hpp"
#include "zzsim/coupler.hpp"
#include "zzsim/spectrum.hpp"

namespace zzsim {
namespace {

using testing::device_a;
using testing::device_b;
using units::from_ghz;
using units::from_hz;
using units::from_mhz;

Operator<double> two_level(double w1, double w2, double g) {
  Eigen::MatrixXd m(2, 2);
  m << w1, g, g, w2;
  return {HilbertSpace({{Mode::Q1, 2}}), m};
}

constexpr std::array<int, 4> k0000 = {0, 0, 0, 0}, k1000 = {1, 0, 0, 0}, k0100 = {0, 1, 0, 0},
                             k1100 = {1, 1, 0, 0};

TEST(Diagonalize, DiagonalInputSorted) {
  Eigen::MatrixXd m = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
  const auto es = diagonalize(Operator<double>{HilbertSpace({{Mode::Q1, 3}}), m});
  EXPECT_EQ(es.values, Eigen::Vector3d(-1.0, 2.0, 3.0));
}

TEST(Diagonalize, TwoByTwoClosedForm) {
  const double w1 = 5.0, w2 = 4.2, g = 0.3;
  const auto es = diagonalize(two_level(w1, w2, g));
  const double mean = 0.5 * (w1 + w2), half = std::sqrt(0.25 * (w1 - w2) * (w1 - w2) + g * g);
  EXPECT_NEAR(es.values[0], mean - half, 1e-14);
  EXPECT_NEAR(es.values[1], mean + half, 1e-14);
}

TEST(Diagonalize, RejectsNonHermitian) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, 0, 1;
  EXPECT_THROW(diagonalize(Operator<double>{HilbertSpace({{Mode::Q1, 2}}), m}), DomainError);
}

TEST(Diagonalize, DeviceEigenvectorsOrthonormalWithSmallResidual) {
  const auto h = build_hamiltonian(device_a(), HilbertSpace::device(), device_a().omega_1 - from_ghz(1.0));
  const auto es = diagonalize(h);
  const Eigen::Index n = es.values.size();
  EXPECT_LT((es.vectors.transpose() * es.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((h.matrix * es.vectors - es.vectors * es.values.asDiagonal()).norm(), 1e-9 * h.matrix.norm());
}

// The coupler branch anticrosses each qubit branch as omega_minus is swept
// through it; the gap matches the 4x4 single-excitation oracle.
TEST(Diagonalize, SingleExcitationAnticrossingFollowsOracle) {
  const DeviceParams& p = device_a();
  const HilbertSpace space = HilbertSpace::device({2, 2, 2, 2});
  double min_gap = 1e30, min_gap_oracle = 1e30;
  for (int i = 0; i <= 80; ++i) {
    const double wm = p.omega_1 + from_ghz(-0.4 + 0.01 * i);
    const auto es = diagonalize(build_hamiltonian(p, space, wm));
    Eigen::Matrix4d oracle;
    oracle << p.omega_1, 0, p.g_1plus, p.g_1minus, 0, p.omega_2, p.g_2plus, p.g_2minus, p.g_1plus,
        p.g_2plus, p.omega_plus, 0, p.g_1minus, p.g_2minus, 0, wm;
    const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(oracle).eigenvalues();
    // In the truncated space the single-excitation levels are indices 1..4.
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.values[k + 1] - es.values[0], ev[k], 1e-3 * from_hz(1.0) + 1e-6 * ev[k]);
    min_gap = std::min(min_gap, es.values[2] - es.values[1]);
    min_gap_oracle = std::min(min_gap_oracle, ev[1] - ev[0]);
  }
  EXPECT_NEAR(min_gap, min_gap_oracle, 1.0);
  EXPECT_GT(min_gap, 0.0);
}

TEST(LabelStates, DecoupledIsIdentity) {
  DeviceParams p = device_a();
  p.g_1plus = p.g_2plus = p.g_1minus = p.g_2minus = 0.0;
  const HilbertSpace space = HilbertSpace::device({3, 3, 2, 3});
  const auto labeled = label_states(diagonalize(build_hamiltonian(p, space, p.omega_1 - from_ghz(1.0))), space);
  for (Eigen::Index b = 0; b < space.total_dim(); ++b) {
    EXPECT_DOUBLE_EQ(labeled.overlap[static_cast<std::size_t>(b)], 1.0);
    EXPECT_DOUBLE_EQ(labeled.eigenvalues[labeled.eigen_index[static_cast<std::size_t>(b)]],
                     build_hamiltonian(p, space, p.omega_1 - from_ghz(1.0)).matrix(b, b));
  }
}

TEST(LabelStates, ResonantPairIsHybridized) {
  const auto h = two_level(5.0, 5.0, 0.1);
  const auto labeled = label_states(diagonalize(h), h.space);
  const std::array<int, 1> zero = {0}, one = {1};
  EXPECT_NEAR(labeled.overlap_of(zero), 0.5, 1e-12);
  EXPECT_NEAR(labeled.overlap_of(one), 0.5, 1e-12);
  EXPECT_NE(labeled.eigen_of(zero), labeled.eigen_of(one));
}

// Eigenvectors along the normalized Hadamard basis: every bare state keeps
// weight 1/4 in every eigenstate.
TEST(LabelStates, FourWayMixingIsHybridized) {
  Eigen::Matrix4d hd;
  hd << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  hd /= 2.0;
  const Eigen::MatrixXd m = hd * Eigen::Vector4d(1, 2, 3, 4).asDiagonal() * hd;
  const Operator<double> h{HilbertSpace({{Mode::Q1, 4}}), m};
  const auto labeled = label_states(diagonalize(h), h.space);
  const std::array<int, 1> ground = {0};
  EXPECT_NEAR(labeled.overlap_of(ground), 0.25, 1e-12);
  EXPECT_TRUE(labeled.hybridized(ground));
}

TEST(LabelStates, DeviceAComputationalStatesWellResolved) {
  const ZetaExact z = evaluate_zeta_exact(device_a(), device_a().omega_1 - from_ghz(1.47));
  for (double o : z.overlaps) EXPECT_GT(o, 0.9);
  EXPECT_TRUE(z.reliable());
}

TEST(LabelStates, AssignmentIsInjective) {
  const HilbertSpace space = HilbertSpace::device();
  const auto labeled = label_states(
      diagonalize(build_hamiltonian(device_b(), space, device_b().omega_1 - from_ghz(0.2))), space);
  std::vector<bool> seen(static_cast<std::size_t>(space.total_dim()), false);
  for (Eigen::Index e : labeled.eigen_index) {
    ASSERT_GE(e, 0);
    EXPECT_FALSE(seen[static_cast<std::size_t>(e)]);
    seen[static_cast<std::size_t>(e)] = true;
  }
}

TEST(ZetaExact, DecoupledIsZero) {
  DeviceParams p = device_a();
  p.g_1plus = p.g_2plus = p.g_1minus = p.g_2minus = 0.0;
  // Exact in arithmetic; the residue is rounding in energies of order 1e11 rad/s.
  EXPECT_NEAR(zeta_exact(p, p.omega_1 - from_ghz(1.0)), 0.0, 1e-4);
}

TEST(ZetaExact, DefinitionFromLabeledEnergies) {
  const DeviceParams& p = device_b();
  const double wm = p.omega_1 - from_ghz(1.2);
  const HilbertSpace space = HilbertSpace::device();
  const auto l = label_states(diagonalize(build_hamiltonian(p, space, wm)), space);
  const double e0 = l.energy(k0000);
  const double expected = (l.energy(k1100) - e0) - (l.energy(k1000) - e0) - (l.energy(k0100) - e0);
  EXPECT_NEAR(zeta_exact(p, wm), expected, 1e-3);
}

TEST(ZetaExact, HybridizedStateThrows) {
  const DeviceParams& p = device_a();
  // Coupler resonant with qubit 1.
  const double wm = p.omega_1 + from_mhz(0.5);
  EXPECT_FALSE(evaluate_zeta_exact(p, wm).reliable());
  EXPECT_THROW(zeta_exact(p, wm), HybridizationError);
}

TEST(ZetaExact, DeviceAZeroCrossings) {
  const ZeroZetaSearch s = find_zero_zeta(device_a(), ZetaMethod::Exact,
                                          device_a().omega_1 - from_ghz(2.5),
                                          device_a().omega_1 - from_ghz(0.3));
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_NEAR(units::to_ghz(s.roots[0].point.omega_minus - device_a().omega_1), -1.47, 0.06);
  EXPECT_NEAR(units::to_ghz(s.roots[1].point.omega_minus - device_a().omega_1), -0.75, 0.06);
}

TEST(ZetaExact, DeviceBZeroCrossings) {
  const ZeroZetaSearch s = find_zero_zeta(device_b(), ZetaMethod::Exact,
                                          device_b().omega_1 - from_ghz(2.5),
                                          device_b().omega_1 - from_ghz(0.3));
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_NEAR(units::to_ghz(s.roots[0].point.omega_minus - device_b().omega_1), -0.84, 0.06);
  EXPECT_NEAR(units::to_ghz(s.roots[1].point.omega_minus - device_b().omega_1), -0.53, 0.06);
}

TEST(Convergence, DecoupledHasNoTruncationDependence) {
  DeviceParams p = device_a();
  p.g_1plus = p.g_2plus = p.g_1minus = p.g_2minus = 0.0;
  for (const auto& row : convergence_check(p, p.omega_1 - from_ghz(1.0), {{3, 3, 2, 3}, {4, 4, 3, 4}}))
    EXPECT_EQ(row.diff_to_largest, 0.0);
}

TEST(Convergence, DeviceAAtMinusOneMHzPoint) {
  const DeviceParams& p = device_a();
  // Device A never reaches -1 MHz in the dispersive window; at
  // omega_minus - omega_1 = -0.5 GHz the magnitude is close to 1 MHz.
  const double wm = p.omega_1 - from_ghz(0.5);
  const auto rows = convergence_check(p, wm, {{3, 3, 3, 3}, {4, 4, 3, 4}, {5, 5, 3, 5}});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(std::abs(units::to_mhz(rows[2].zeta)), 1.0, 0.3);
  EXPECT_LT(rows[0].diff_to_largest, 0.01 * std::abs(rows[2].zeta));
  EXPECT_LT(rows[1].diff_to_largest, 0.01 * std::abs(rows[2].zeta));
  EXPECT_EQ(rows[2].diff_to_largest, 0.0);
}

// A two-level bus cannot hold the doubly occupied intermediate state, so the
// bus two-photon contribution is lost.
TEST(Convergence, TwoLevelBusMissesTwoPhotonPath) {
  const DeviceParams& p = device_a();
  const auto rows = convergence_check(p, p.omega_1 - from_ghz(0.5), {{3, 3, 2, 3}, {5, 5, 3, 5}});
  EXPECT_GT(rows[0].diff_to_largest, 0.1 * std::abs(rows[1].zeta));
}

TEST(Convergence, NeedsTwoTruncations) {
  EXPECT_THROW(convergence_check(device_a(), device_a().omega_1 - from_ghz(1.0), {{4, 4, 3, 4}}),
               DomainError);
}

TEST(Convergence, DeviceBCrossingStableUnderTruncation) {
  const DeviceParams& p = device_b();
  std::vector<double> roots;
  for (std::array<int, 4> dims : {std::array<int, 4>{4, 4, 3, 4}, std::array<int, 4>{5, 5, 4, 5}}) {
    ZeroZetaOptions opt;
    opt.space = HilbertSpace::device(dims);
    opt.grid_points = 24;
    const auto s = find_zero_zeta(p, ZetaMethod::Exact, p.omega_1 - from_ghz(0.95),
                                  p.omega_1 - from_ghz(0.75), opt);
    ASSERT_EQ(s.roots.size(), 1u);
    roots.push_back(s.roots[0].point.omega_minus);
  }
  EXPECT_LT(std::abs(roots[1] - roots[0]), from_mhz(5.0));
}

TEST(ZetaExactProperty, GlobalFrequencyShiftInvariance) {
  testing::Gen gen(21);
  const HilbertSpace space = HilbertSpace::device({3, 3, 2, 3});
  for (int trial = 0; trial < 10; ++trial) {
    const DeviceParams p = gen.device();
    const double wm = std::min(p.omega_1, p.omega_2) - from_ghz(gen.uniform(0.5, 1.5));
    const double shift = from_ghz(gen.uniform(-1.0, 1.0));
    const ZetaExact a = evaluate_zeta_exact(p, wm, space);
    const ZetaExact b = evaluate_zeta_exact(p.shifted(shift), wm + shift, space);
    if (!a.reliable()) continue;
    EXPECT_LT(std::abs(a.zeta - b.zeta), from_hz(1.0));
  }
}

TEST(ZetaExactProperty, QubitExchangeSymmetry) {
  testing::Gen gen(22);
  const HilbertSpace space = HilbertSpace::device({3, 3, 3, 3});
  for (int trial = 0; trial < 10; ++trial) {
    const DeviceParams p = gen.device();
    const double wm = std::min(p.omega_1, p.omega_2) - from_ghz(gen.uniform(0.5, 1.5));
    const ZetaExact a = evaluate_zeta_exact(p, wm, space);
    const ZetaExact b = evaluate_zeta_exact(p.with_qubits_swapped(), wm, space);
    if (!a.reliable()) continue;
    EXPECT_NEAR(a.zeta, b.zeta, from_hz(1.0));
  }
}

TEST(SpectrumProperty, EigenvectorsLiveInOneExcitationSector) {
  testing::Gen gen(23);
  const HilbertSpace space = HilbertSpace::device({3, 3, 2, 3});
  for (int trial = 0; trial < 5; ++trial) {
    const DeviceParams p = gen.device();
    const double wm = std::min(p.omega_1, p.omega_2) - from_ghz(gen.uniform(0.5, 1.5));
    const auto es = diagonalize(build_hamiltonian(p, space, wm));
    for (Eigen::Index k = 0; k < space.total_dim(); ++k) {
      std::vector<double> weight(16, 0.0);
      for (Eigen::Index b = 0; b < space.total_dim(); ++b)
        weight[static_cast<std::size_t>(space.excitations(b))] += es.vectors(b, k) * es.vectors(b, k);
      const double top = *std::max_element(weight.begin(), weight.end());
      EXPECT_LT(1.0 - top, 1e-10);
    }
  }
}

}  // namespace
}  // namespace zzsim
