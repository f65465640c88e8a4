#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "support.hpp"
#include "zzsim/channels.hpp"

namespace zzsim {
namespace {

using C = std::complex<double>;
using testing::Gen;
using testing::max_abs;

// The relaxation map written in its printed operator form:
// (1+e2)/2 rho + (1-e2)/2 Z rho Z + (1-e1)(|0><1|rho|1><0| - |1><1|rho|1><1|).
Eigen::Matrix2cd printed_relaxation(const Eigen::Matrix2cd& rho, const NoiseParams& n) {
  const double e1 = std::exp(-n.gate_time / n.t1), e2 = std::exp(-n.gate_time / n.t2);
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = 1;
  z(1, 1) = -1;
  Eigen::Matrix2cd amp = Eigen::Matrix2cd::Zero();
  amp(0, 0) = rho(1, 1);
  amp(1, 1) = -rho(1, 1);
  return 0.5 * (1 + e2) * rho + 0.5 * (1 - e2) * z * rho * z + (1 - e1) * amp;
}

// Choi matrix of a single-qubit linear map.
template <typename Map>
Eigen::Matrix4cd choi(Map&& map) {
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
      e(a, b) = 1;
      j.block<2, 2>(2 * a, 2 * b) = map(e);
    }
  return j;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues().minCoeff();
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

bool equal_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return std::abs(std::abs((a.adjoint() * b).trace()) - 2.0) < 1e-9;
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  EXPECT_THROW(DensityMatrix{m}, DomainError);  // trace 2
  m = 0.5 * Eigen::Matrix2cd::Identity();
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, DomainError);  // not Hermitian
  m(0, 1) = m(1, 0) = 0.6;
  EXPECT_THROW(DensityMatrix{m}, DomainError);  // negative eigenvalue
  EXPECT_FALSE(density_matrix_defect(m).empty());
  EXPECT_NO_THROW(DensityMatrix::basis(4, 3));
}

TEST(ApplyGate, IdentityLeavesStateUnchanged) {
  Gen gen(51);
  const DensityMatrix rho = gen.density(4);
  EXPECT_EQ(apply_gate(rho, Eigen::Matrix4cd::Identity()).matrix(), rho.matrix());
}

TEST(ApplyGate, XPiFlipsGround) {
  const DensityMatrix out = apply_gate(DensityMatrix::basis(2, 0), gate_unitary(GateLabel::X180));
  EXPECT_NEAR(out.population(1), 1.0, 1e-15);
}

TEST(ApplyGate, RejectsBadInput) {
  Eigen::Matrix2cd not_unitary = Eigen::Matrix2cd::Identity();
  not_unitary(0, 1) = 0.1;
  EXPECT_THROW(apply_gate(DensityMatrix::basis(2, 0), not_unitary), DomainError);
  EXPECT_THROW(apply_gate(DensityMatrix::basis(4, 0), gate_unitary(GateLabel::I)), DomainError);
}

TEST(Gates, RotationConvention) {
  const Eigen::Matrix2cd& x90 = gate_unitary(GateLabel::XPlus90);
  const double s = 1 / std::numbers::sqrt2;
  EXPECT_NEAR(std::abs(x90(0, 0) - C(s, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(x90(0, 1) - C(0, -s)), 0, 1e-15);
  EXPECT_TRUE((gate_unitary(GateLabel::XPlus90) * gate_unitary(GateLabel::XMinus90))
                  .isIdentity(1e-15));
}

// Oracle: breadth-first closure of the primary gates under multiplication.
TEST(Clifford, PrimaryGatesGenerateTwentyFourElements) {
  std::vector<Eigen::Matrix2cd> group = {Eigen::Matrix2cd::Identity()};
  for (std::size_t k = 0; k < group.size(); ++k)
    for (GateLabel g : kPrimaryGates) {
      const Eigen::Matrix2cd u = gate_unitary(g) * group[k];
      bool seen = false;
      for (const auto& v : group) seen = seen || equal_up_to_phase(u, v);
      if (!seen) group.push_back(u);
    }
  EXPECT_EQ(group.size(), 24u);
  std::set<int> found;
  for (const auto& u : group) found.insert(find_clifford(u));
  EXPECT_EQ(found.size(), 24u);
}

TEST(Clifford, WordsComposeToTableEntries) {
  for (int k = 0; k < 24; ++k) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (GateLabel g : clifford_words()[static_cast<std::size_t>(k)]) u = gate_unitary(g) * u;
    EXPECT_TRUE(equal_up_to_phase(u, clifford_unitary(k)));
    EXPECT_EQ(find_clifford(u), k);
  }
  EXPECT_DOUBLE_EQ(mean_clifford_length(), 1.875);
}

TEST(Clifford, NonCliffordRejected) {
  Eigen::Matrix2cd t = Eigen::Matrix2cd::Identity();
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  EXPECT_THROW(find_clifford(t), DomainError);
}

TEST(ApplyZz, ZeroRateAndFullWrapAreIdentity) {
  Gen gen(52);
  const DensityMatrix rho = gen.density(4);
  EXPECT_EQ(apply_zz(rho, 0.0, 22e-9).matrix(), rho.matrix());
  const double zeta = 2 * std::numbers::pi * 2.26e6;
  EXPECT_LT(max_abs(apply_zz(rho, zeta, 2 * std::numbers::pi / zeta).matrix() - rho.matrix()), 1e-12);
}

TEST(ApplyZz, CoherencePicksUpPhase) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(1) = psi(3) = 1 / std::numbers::sqrt2;
  const double zeta = 2 * std::numbers::pi * 1e6, t = 100e-9;
  const DensityMatrix out = apply_zz(DensityMatrix::pure(psi), zeta, t);
  EXPECT_LT(std::abs(out.matrix()(3, 1) - 0.5 * std::polar(1.0, -zeta * t)), 1e-15);
  EXPECT_NEAR(out.population(1), 0.5, 1e-15);
}

TEST(ApplyZz, NeedsTwoQubits) {
  EXPECT_THROW(apply_zz(DensityMatrix::basis(2, 0), 1.0, 1.0), DomainError);
}

TEST(Decoherence, ShortTimeIsIdentity) {
  Gen gen(53);
  const DensityMatrix rho = gen.density(2);
  const NoiseParams n{20e-6, 10e-6, 1e-18};
  EXPECT_LT(max_abs(apply_decoherence(rho, n).matrix() - rho.matrix()), 1e-12);
}

TEST(Decoherence, ExcitedStateRelaxes) {
  const NoiseParams n{15.2e-6, 4.2e-6, 22e-9};
  const double e1 = std::exp(-n.gate_time / n.t1);
  const DensityMatrix out = apply_decoherence(DensityMatrix::basis(2, 1), n);
  EXPECT_NEAR(out.population(0), 1 - e1, 1e-15);
  EXPECT_NEAR(out.population(1), e1, 1e-15);
}

TEST(Decoherence, MaximallyMixedInput) {
  const NoiseParams n{12.1e-6, 4.0e-6, 95e-9};
  const DensityMatrix out = apply_decoherence(DensityMatrix(0.5 * Eigen::MatrixXcd::Identity(2, 2)), n);
  EXPECT_NEAR(out.population(1), 0.5 * std::exp(-n.gate_time / n.t1), 1e-15);
  EXPECT_EQ(out.matrix()(0, 1), C(0.0));
}

TEST(Decoherence, GroundStateIsFixedPoint) {
  const NoiseParams n{12.1e-6, 4.0e-6, 95e-9};
  EXPECT_EQ(apply_decoherence(DensityMatrix::basis(2, 0), n).matrix(),
            DensityMatrix::basis(2, 0).matrix());
}

TEST(Decoherence, ValidationRejectsT2AboveTwiceT1) {
  EXPECT_THROW((NoiseParams{10e-6, 20.5e-6, 22e-9}.validate()), DomainError);
  EXPECT_THROW((NoiseParams{10e-6, 5e-6, 0.0}.validate()), DomainError);
  EXPECT_NO_THROW((NoiseParams{10e-6, 20e-6, 22e-9}.validate()));
  EXPECT_NO_THROW(NoiseParams::ideal(22e-9).validate());
}

TEST(DecoherenceProperty, MatchesPrintedOperatorForm) {
  Gen gen(54);
  for (int trial = 0; trial < 200; ++trial) {
    const NoiseParams n = gen.noise();
    const Eigen::Matrix2cd m = gen.ginibre(2);  // any operator, the map is linear
    EXPECT_LT(max_abs(linear::decoherence(m, n) - printed_relaxation(m, n)), 1e-14);
  }
}

TEST(DecoherenceProperty, TwoQubitEmbeddingActsOnOneFactor) {
  Gen gen(55);
  for (int trial = 0; trial < 50; ++trial) {
    const NoiseParams n = gen.noise();
    const Eigen::Matrix2cd a = gen.ginibre(2), b = gen.ginibre(2);
    EXPECT_LT(max_abs(linear::decoherence(kron(a, b), 1, n) - kron(printed_relaxation(a, n), b)), 1e-13);
    EXPECT_LT(max_abs(linear::decoherence(kron(a, b), 2, n) - kron(a, printed_relaxation(b, n))), 1e-13);
  }
}

// Completely positive exactly when t2 <= 2 t1.
TEST(DecoherenceProperty, CompletelyPositiveIffT2AtMostTwiceT1) {
  Gen gen(56);
  for (int trial = 0; trial < 200; ++trial) {
    NoiseParams n = gen.noise();
    n.gate_time *= 50;  // make violations visible
    const double ratio = gen.uniform(0.1, 4.0);
    n.t2 = ratio * n.t1;
    const double lam = min_eigenvalue(choi([&](const Eigen::Matrix2cd& m) { return linear::decoherence(m, n); }));
    if (ratio <= 2.0)
      EXPECT_GT(lam, -1e-12) << "t2/t1 = " << ratio;
    else if (ratio > 2.05)
      EXPECT_LT(lam, 0.0) << "t2/t1 = " << ratio;
  }
}

TEST(ChannelProperty, TraceAndHermiticityPreserved) {
  Gen gen(57);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = gen.density(4, gen.integer(1, 4));
    const NoiseParams n1 = gen.noise(), n2 = gen.noise();
    const double zeta = gen.uniform(-1e8, 1e8);
    const GateLabel g1 = kPrimaryGates[static_cast<std::size_t>(gen.integer(0, 6))];
    const GateLabel g2 = kPrimaryGates[static_cast<std::size_t>(gen.integer(0, 6))];
    const std::vector<Eigen::MatrixXcd> outs = {
        apply_gate(rho, gen.unitary(4)).matrix(), apply_zz(rho, zeta, n1.gate_time).matrix(),
        apply_decoherence(rho, 1, n1).matrix(), apply_decoherence(rho, 2, n2).matrix(),
        rb_step(rho, {g1, g2}, zeta, n1, n2).matrix()};
    for (const auto& m : outs) {
      EXPECT_LT(std::abs(m.trace() - C(1.0)), 1e-10);
      EXPECT_LT(max_abs(m - m.adjoint()), 1e-10);
      EXPECT_GT(min_eigenvalue(m), -1e-9);
    }
  }
}

TEST(RbStep, NoiselessIdentityIsIdentity) {
  Gen gen(58);
  const DensityMatrix rho = gen.density(4);
  const NoiseParams ideal = NoiseParams::ideal(22e-9);
  EXPECT_LT(max_abs(rb_step(rho, {GateLabel::I, GateLabel::I}, 0.0, ideal, ideal).matrix() - rho.matrix()),
            1e-15);
}

TEST(RbStep, OrderMatters) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Constant(0.5);
  const Eigen::Matrix4cd rho = psi * psi.adjoint();
  const Eigen::Matrix4cd u = kron(gate_unitary(GateLabel::XPlus90), gate_unitary(GateLabel::YPlus90));
  const double zeta = 2 * std::numbers::pi * 2.26e6, t = 22e-9;
  const Eigen::Matrix4cd gates_first = linear::zz(u * rho * u.adjoint(), zeta, t);
  const Eigen::Matrix4cd zz_first = u * linear::zz(rho, zeta, t) * u.adjoint();
  EXPECT_GT(max_abs(gates_first - zz_first), 1e-4);
  const NoiseParams ideal = NoiseParams::ideal(t);
  EXPECT_LT(max_abs(linear::rb_step(rho, u, zeta, ideal, ideal) - gates_first), 1e-15);
}

TEST(RbStep, XPiOnQubitOneThenRelaxation) {
  const NoiseParams n1{15.2e-6, 4.2e-6, 22e-9}, n2{12.1e-6, 4.0e-6, 22e-9};
  const DensityMatrix out = rb_step(DensityMatrix::basis(4, 0), {GateLabel::X180, GateLabel::I}, 0.0, n1, n2);
  EXPECT_NEAR(out.population(2) + out.population(3), std::exp(-n1.gate_time / n1.t1), 1e-14);
  EXPECT_NEAR(out.population(3), 0.0, 1e-15);
}

}  // namespace
}  // namespace zzsim
