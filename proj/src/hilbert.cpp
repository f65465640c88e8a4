#include "zzsim/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace zzsim {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Q1: return "Q1";
    case Mode::Q2: return "Q2";
    case Mode::BusPlus: return "BusPlus";
    case Mode::CouplerMinus: return "CouplerMinus";
  }
  return "?";
}

HilbertSpace::HilbertSpace(std::vector<ModeSpec> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw DomainError("Hilbert space needs at least one mode");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].dim < 2)
      throw DomainError("mode " + to_string(modes_[i].label) + " needs dim >= 2");
    if (i > 0 && static_cast<int>(modes_[i].label) <= static_cast<int>(modes_[i - 1].label))
      throw DomainError("modes must be unique and ordered Q1, Q2, BusPlus, CouplerMinus");
  }
  strides_.assign(modes_.size(), 1);
  for (std::size_t i = modes_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= modes_[i].dim;
  }
}

HilbertSpace HilbertSpace::device(std::array<int, 4> dims) {
  return HilbertSpace({{Mode::Q1, dims[0]},
                       {Mode::Q2, dims[1]},
                       {Mode::BusPlus, dims[2]},
                       {Mode::CouplerMinus, dims[3]}});
}

bool HilbertSpace::contains(Mode mode) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [mode](const ModeSpec& m) { return m.label == mode; });
}

std::size_t HilbertSpace::position(Mode mode) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].label == mode) return i;
  throw DomainError("mode " + to_string(mode) + " is not part of this Hilbert space");
}

Eigen::Index HilbertSpace::index_of(std::span<const int> occupations) const {
  if (occupations.size() != modes_.size())
    throw DomainError("occupation list length does not match the number of modes");
  Eigen::Index index = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (occupations[i] < 0 || occupations[i] >= modes_[i].dim)
      throw DomainError("occupation outside truncation for mode " + to_string(modes_[i].label));
    index += occupations[i] * strides_[i];
  }
  return index;
}

std::vector<int> HilbertSpace::occupations_of(Eigen::Index index) const {
  std::vector<int> occ(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i)
    occ[i] = static_cast<int>((index / strides_[i]) % modes_[i].dim);
  return occ;
}

int HilbertSpace::excitations(Eigen::Index index) const {
  int total = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    total += static_cast<int>((index / strides_[i]) % modes_[i].dim);
  return total;
}

std::string HilbertSpace::ket(Eigen::Index index) const {
  std::string s = "|";
  for (int n : occupations_of(index)) s += std::to_string(n);
  return s + ">";
}

bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
  if (a.modes_.size() != b.modes_.size()) return false;
  for (std::size_t i = 0; i < a.modes_.size(); ++i)
    if (a.modes_[i].label != b.modes_[i].label || a.modes_[i].dim != b.modes_[i].dim) return false;
  return true;
}

double DeviceParams::omega(Mode mode, double omega_minus) const {
  switch (mode) {
    case Mode::Q1: return omega_1;
    case Mode::Q2: return omega_2;
    case Mode::BusPlus: return omega_plus;
    case Mode::CouplerMinus: return omega_minus;
  }
  return 0.0;
}

double DeviceParams::alpha(Mode mode) const {
  switch (mode) {
    case Mode::Q1: return alpha_1;
    case Mode::Q2: return alpha_2;
    case Mode::BusPlus: return alpha_plus;
    case Mode::CouplerMinus: return alpha_minus;
  }
  return 0.0;
}

double DeviceParams::g(Mode qubit, Mode coupler) const {
  if (qubit == Mode::Q1 && coupler == Mode::BusPlus) return g_1plus;
  if (qubit == Mode::Q2 && coupler == Mode::BusPlus) return g_2plus;
  if (qubit == Mode::Q1 && coupler == Mode::CouplerMinus) return g_1minus;
  if (qubit == Mode::Q2 && coupler == Mode::CouplerMinus) return g_2minus;
  return 0.0;
}

namespace {

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw DomainError("invalid device parameter " + field + ": " + rule);
}

}  // namespace

void DeviceParams::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  const auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };

  require(positive(omega_1), "omega_1", "must be positive");
  require(positive(omega_2), "omega_2", "must be positive");
  require(positive(omega_plus), "omega_plus", "must be positive");
  require(positive(omega_minus_max), "omega_minus_max", "must be positive");
  require(non_negative(alpha_1), "alpha_1", "must be non-negative");
  require(non_negative(alpha_2), "alpha_2", "must be non-negative");
  require(non_negative(alpha_plus), "alpha_plus", "must be non-negative");
  require(non_negative(alpha_minus), "alpha_minus", "must be non-negative");
  require(non_negative(g_1plus), "g_1plus", "must be non-negative");
  require(non_negative(g_2plus), "g_2plus", "must be non-negative");
  require(non_negative(g_1minus), "g_1minus", "must be non-negative");
  require(non_negative(g_2minus), "g_2minus", "must be non-negative");
  require(positive(flux_quantum), "flux_quantum", "must be positive");
  for (int q = 0; q < 2; ++q) {
    const std::string suffix = "_" + std::to_string(q + 1);
    require(t1[q] > 0.0, "t1" + suffix, "must be positive");
    require(t2[q] > 0.0, "t2" + suffix, "must be positive");
    require(t2[q] <= 2.0 * t1[q], "t2" + suffix,
            "qubit " + std::to_string(q + 1) + " violates t2 <= 2 t1");
  }
}

DeviceParams DeviceParams::with_qubits_swapped() const {
  DeviceParams p = *this;
  std::swap(p.omega_1, p.omega_2);
  std::swap(p.alpha_1, p.alpha_2);
  std::swap(p.g_1plus, p.g_2plus);
  std::swap(p.g_1minus, p.g_2minus);
  std::swap(p.t1[0], p.t1[1]);
  std::swap(p.t2[0], p.t2[1]);
  return p;
}

DeviceParams DeviceParams::shifted(double shift) const {
  DeviceParams p = *this;
  p.omega_1 += shift;
  p.omega_2 += shift;
  p.omega_plus += shift;
  p.omega_minus_max += shift;
  return p;
}

}  // namespace zzsim
