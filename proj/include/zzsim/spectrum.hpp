#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "zzsim/hilbert.hpp"

namespace zzsim {

template <typename Scalar = double>
struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix<Scalar> vectors;  // columns, orthonormal
};

/// Largest |H - H^dagger| entry relative to the largest |H| entry.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

/// Full spectrum of a Hermitian operator.
template <typename Scalar>
Eigensystem<Scalar> diagonalize(const Operator<Scalar>& h, double hermitian_tol = 1e-10) {
  if (h.matrix.rows() != h.space.total_dim() || h.matrix.cols() != h.space.total_dim())
    throw DomainError("operator dimension does not match its Hilbert space");
  if (hermiticity_defect(h.matrix) > hermitian_tol)
    throw DomainError("diagonalize: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw InternalError("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Eigenstates tagged with the bare Fock state they most resemble.
struct LabeledSpectrum {
  static constexpr double kHybridizationThreshold = 0.5;

  HilbertSpace space;
  Eigen::VectorXd eigenvalues;
  std::vector<Eigen::Index> eigen_index;  // bare basis index -> eigenvector index
  std::vector<double> overlap;            // bare basis index -> |<bare|eigen>|^2

  Eigen::Index eigen_of(std::span<const int> occupations) const {
    return eigen_index[space.index_of(occupations)];
  }
  double energy(std::span<const int> occupations) const {
    return eigenvalues[eigen_of(occupations)];
  }
  double overlap_of(std::span<const int> occupations) const {
    return overlap[space.index_of(occupations)];
  }
  bool hybridized(std::span<const int> occupations) const {
    return overlap_of(occupations) < kHybridizationThreshold;
  }
};

/// Global greedy assignment: all (bare, eigen) pairs are visited in
/// descending overlap and accepted when neither side is taken yet. Ties are
/// broken by bare index, then eigen index, so the result is deterministic.
template <typename Scalar>
LabeledSpectrum label_states(const Eigensystem<Scalar>& es, const HilbertSpace& space) {
  const Eigen::Index n = space.total_dim();
  if (es.vectors.rows() != n || es.vectors.cols() != n)
    throw DomainError("eigensystem dimension does not match the Hilbert space");

  const Eigen::MatrixXd weight = es.vectors.cwiseAbs2();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n * n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Column-major flat index: bare = k % n, eigen = k / n.
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double wa = weight.data()[a], wb = weight.data()[b];
    if (wa != wb) return wa > wb;
    if (a % n != b % n) return a % n < b % n;
    return a / n < b / n;
  });

  LabeledSpectrum out{space, es.values, std::vector<Eigen::Index>(n, -1),
                      std::vector<double>(n, 0.0)};
  std::vector<bool> eigen_taken(n, false);
  Eigen::Index assigned = 0;
  for (Eigen::Index k : order) {
    const Eigen::Index bare = k % n, eig = k / n;
    if (out.eigen_index[bare] >= 0 || eigen_taken[eig]) continue;
    out.eigen_index[bare] = eig;
    out.overlap[bare] = weight.data()[k];
    eigen_taken[eig] = true;
    if (++assigned == n) break;
  }
  return out;
}

/// Exact ZZ rate together with the label quality of the four computational states.
struct ZetaExact {
  double zeta = 0.0;                   // rad/s
  std::array<double, 4> overlaps{};    // |0000>, |1000>, |0100>, |1100>
  double min_overlap() const { return *std::min_element(overlaps.begin(), overlaps.end()); }
  bool reliable() const { return min_overlap() >= LabeledSpectrum::kHybridizationThreshold; }
};

/// zeta = w_1100 - w_1000 - w_0100 (energies relative to the dressed ground
/// state). Never throws on hybridization; check reliable().
ZetaExact evaluate_zeta_exact(const DeviceParams& params, double omega_minus,
                              const HilbertSpace& space = HilbertSpace::device());

/// As evaluate_zeta_exact, but throws HybridizationError when any of the
/// computational states has overlap below 0.5.
double zeta_exact(const DeviceParams& params, double omega_minus,
                  const HilbertSpace& space = HilbertSpace::device());

struct ConvergenceRow {
  std::array<int, 4> dims;
  double zeta;           // rad/s
  double diff_to_largest;  // |zeta - zeta(largest truncation)|, rad/s
};

/// Exact zeta for each truncation, compared against the largest one.
std::vector<ConvergenceRow> convergence_check(const DeviceParams& params, double omega_minus,
                                              const std::vector<std::array<int, 4>>& dims_list);

}  // namespace zzsim
