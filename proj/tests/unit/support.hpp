#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "zzsim/channels.hpp"
#include "zzsim/device_io.hpp"
#include "zzsim/hilbert.hpp"
#include "zzsim/units.hpp"

namespace zzsim::testing {

// Hand-rolled generators for property tests. Every test seeds its own engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Eigen::MatrixXcd ginibre(Eigen::Index n) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {normal(), normal()};
    return m;
  }

  // Haar-distributed unitary via QR with the phase fix.
  Eigen::MatrixXcd unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n));
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    return q;
  }

  Eigen::Matrix4cd unitary4() { return unitary(4); }

  // Random mixed state of the given rank.
  DensityMatrix density(Eigen::Index n, Eigen::Index rank = -1) {
    if (rank < 0) rank = n;
    Eigen::MatrixXcd a = ginibre(n).leftCols(rank);
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
  }

  Eigen::MatrixXcd hermitian(Eigen::Index n) {
    const Eigen::MatrixXcd a = ginibre(n);
    return 0.5 * (a + a.adjoint());
  }

  // Physical noise with t2 <= 2 t1.
  NoiseParams noise() {
    NoiseParams n;
    n.t1 = uniform(2e-6, 60e-6);
    n.t2 = uniform(0.1, 2.0) * n.t1;
    n.gate_time = uniform(5e-9, 200e-9);
    return n;
  }

  // Device in the straddling regime with the coupler below both qubits.
  DeviceParams device() {
    using units::from_ghz;
    DeviceParams p;
    p.name = "generated";
    p.omega_1 = from_ghz(uniform(4.6, 5.4));
    p.omega_2 = p.omega_1 + from_ghz(uniform(-0.25, 0.25));
    p.omega_plus = std::max(p.omega_1, p.omega_2) + from_ghz(uniform(1.2, 2.5));
    p.omega_minus_max = std::min(p.omega_1, p.omega_2) + from_ghz(uniform(1.0, 2.5));
    p.alpha_1 = from_ghz(uniform(0.3, 0.45));
    p.alpha_2 = from_ghz(uniform(0.3, 0.45));
    p.alpha_minus = from_ghz(uniform(0.2, 0.8));
    p.g_1plus = from_ghz(uniform(0.05, 0.15));
    p.g_2plus = from_ghz(uniform(0.05, 0.15));
    p.g_1minus = from_ghz(uniform(0.05, 0.12));
    p.g_2minus = from_ghz(uniform(0.05, 0.12));
    p.t1 = {from_us(uniform(10, 40)), from_us(uniform(10, 40))};
    p.t2 = {uniform(0.2, 1.5) * p.t1[0], uniform(0.2, 1.5) * p.t1[1]};
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;

  static double from_us(double us) { return units::from_us(us); }
};

inline const DeviceParams& device_a() {
  static const DeviceParams p = load_device("device_a").params;
  return p;
}

inline const DeviceParams& device_b() {
  static const DeviceParams p = load_device("device_b").params;
  return p;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace zzsim::testing
