#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zzsim/errors.hpp"

namespace zzsim {

/// Circuit elements, in the fixed tensor-product order used everywhere.
enum class Mode { Q1 = 0, Q2 = 1, BusPlus = 2, CouplerMinus = 3 };

inline constexpr std::array<Mode, 4> kDeviceModes = {Mode::Q1, Mode::Q2, Mode::BusPlus,
                                                     Mode::CouplerMinus};

std::string to_string(Mode mode);

struct ModeSpec {
  Mode label;
  int dim;  // retained Fock levels
};

/// Truncated Fock space of up to four modes. The first mode is the most
/// significant digit of the basis index.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<ModeSpec> modes);

  /// Four-mode device space with per-mode truncation (Q1, Q2, bus, coupler).
  static HilbertSpace device(std::array<int, 4> dims);
  /// Default truncation: 4 levels per qubit and coupler, 3 for the bus.
  static HilbertSpace device() { return device({4, 4, 3, 4}); }

  const std::vector<ModeSpec>& modes() const { return modes_; }
  Eigen::Index total_dim() const { return total_dim_; }

  bool contains(Mode mode) const;
  bool is_device() const { return modes_.size() == 4; }
  /// Position of `mode` in modes(); throws DomainError when absent.
  std::size_t position(Mode mode) const;
  int dim(Mode mode) const { return modes_[position(mode)].dim; }
  Eigen::Index stride(Mode mode) const { return strides_[position(mode)]; }

  /// Occupations are listed in the order of modes().
  Eigen::Index index_of(std::span<const int> occupations) const;
  std::vector<int> occupations_of(Eigen::Index index) const;
  int occupation(Eigen::Index index, Mode mode) const {
    return static_cast<int>((index / stride(mode)) % dim(mode));
  }
  int excitations(Eigen::Index index) const;
  /// Ket label such as "|1100>".
  std::string ket(Eigen::Index index) const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b);

 private:
  std::vector<ModeSpec> modes_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index total_dim_ = 1;
};

/// Device parameters in internal units: angular frequencies (rad/s), times (s).
struct DeviceParams {
  std::string name;

  double omega_1 = 0.0;
  double omega_2 = 0.0;
  double omega_plus = 0.0;
  double omega_minus_max = 0.0;

  double alpha_1 = 0.0;
  double alpha_2 = 0.0;
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;

  double g_1plus = 0.0;
  double g_2plus = 0.0;
  double g_1minus = 0.0;
  double g_2minus = 0.0;

  std::array<double, 2> t1 = {std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
  std::array<double, 2> t2 = {std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};

  double flux_quantum = 1.0;  // Wb; 1 in normalized units

  /// Mode frequency, with the coupler taken at the supplied bias frequency.
  double omega(Mode mode, double omega_minus) const;
  double alpha(Mode mode) const;
  /// Coupling between a qubit and a coupler mode; zero for other pairs.
  double g(Mode qubit, Mode coupler) const;

  /// Throws DomainError naming the offending field.
  void validate() const;

  DeviceParams with_qubits_swapped() const;
  /// Adds `shift` to every mode frequency (including omega_minus_max).
  DeviceParams shifted(double shift) const;
};

template <typename Scalar = double>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
struct Operator {
  HilbertSpace space;
  Matrix<Scalar> matrix;

  Operator adjoint() const { return {space, matrix.adjoint()}; }

  friend Operator operator*(const Operator& a, const Operator& b) {
    if (!(a.space == b.space)) throw DomainError("operator product across different spaces");
    return {a.space, a.matrix * b.matrix};
  }
  friend Operator operator+(const Operator& a, const Operator& b) {
    if (!(a.space == b.space)) throw DomainError("operator sum across different spaces");
    return {a.space, a.matrix + b.matrix};
  }
};

/// Lowering operator of `mode`, identity on every other factor.
template <typename Scalar = double>
Operator<Scalar> annihilation(const HilbertSpace& space, Mode mode) {
  const Eigen::Index n = space.total_dim();
  const Eigen::Index stride = space.stride(mode);
  Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const int level = space.occupation(col, mode);
    if (level > 0) a(col - stride, col) = Scalar(std::sqrt(static_cast<double>(level)));
  }
  return {space, std::move(a)};
}

template <typename Scalar = double>
Operator<Scalar> creation(const HilbertSpace& space, Mode mode) {
  return annihilation<Scalar>(space, mode).adjoint();
}

template <typename Scalar = double>
Operator<Scalar> number(const HilbertSpace& space, Mode mode) {
  const auto a = annihilation<Scalar>(space, mode);
  return a.adjoint() * a;
}

/// Sum of the number operators of every mode in the space.
template <typename Scalar = double>
Operator<Scalar> excitation_number(const HilbertSpace& space) {
  const Eigen::Index n = space.total_dim();
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(space.excitations(i));
  return {space, std::move(m)};
}

/// H/hbar for two Kerr-oscillator qubits coupled through a bus and a tunable
/// coupler; `omega_minus` is the coupler frequency at the current bias.
///
/// Assembled directly in the Fock basis: the Kerr term -alpha/2 a'a'aa is
/// diagonal with value -alpha n(n-1)/2, and each exchange term
/// g (a_i' a_j + a_i a_j') moves one quantum between a qubit and a coupler.
template <typename Scalar = double>
Operator<Scalar> build_hamiltonian(const DeviceParams& params, const HilbertSpace& space,
                                   double omega_minus) {
  if (!space.is_device())
    throw DomainError("build_hamiltonian needs all four modes (Q1, Q2, bus, coupler)");
  if (!(omega_minus > 0.0)) throw DomainError("omega_minus must be positive");

  const Eigen::Index n = space.total_dim();
  Matrix<Scalar> h = Matrix<Scalar>::Zero(n, n);

  for (Eigen::Index col = 0; col < n; ++col) {
    double diag = 0.0;
    for (Mode m : kDeviceModes) {
      const double k = space.occupation(col, m);
      diag += params.omega(m, omega_minus) * k - 0.5 * params.alpha(m) * k * (k - 1.0);
    }
    h(col, col) = Scalar(diag);
  }

  for (Mode q : {Mode::Q1, Mode::Q2}) {
    for (Mode c : {Mode::BusPlus, Mode::CouplerMinus}) {
      const double g = params.g(q, c);
      if (g == 0.0) continue;
      const Eigen::Index sq = space.stride(q);
      const Eigen::Index sc = space.stride(c);
      for (Eigen::Index col = 0; col < n; ++col) {
        const int nq = space.occupation(col, q);
        const int nc = space.occupation(col, c);
        // a_q' a_c : |nq, nc> -> sqrt((nq+1) nc) |nq+1, nc-1>
        if (nc > 0 && nq + 1 < space.dim(q)) {
          const Eigen::Index row = col + sq - sc;
          const double amp = g * std::sqrt(static_cast<double>((nq + 1) * nc));
          h(row, col) += Scalar(amp);
          h(col, row) += Scalar(amp);
        }
      }
    }
  }
  return {space, std::move(h)};
}

}  // namespace zzsim
