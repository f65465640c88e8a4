#include "zzsim/perturbation.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

namespace zzsim {

namespace {

double inv(double denominator, const char* name) {
  if (std::abs(denominator) < kPoleTolerance) throw PoleError(name, denominator);
  return 1.0 / denominator;
}

double sq(double x) { return x * x; }

}  // namespace

DetuningSet detunings(const DeviceParams& params, double omega_minus) {
  DetuningSet d;
  for (Mode i : kDeviceModes)
    for (Mode j : kDeviceModes)
      d.delta(static_cast<int>(i), static_cast<int>(j)) =
          params.omega(i, omega_minus) - params.omega(j, omega_minus);
  return d;
}

ZetaTerms zeta_perturbative_terms(const DeviceParams& p, double omega_minus) {
  const DetuningSet d = detunings(p, omega_minus);
  const double d1p = d.d1p(), d2p = d.d2p(), d1m = d.d1m(), d2m = d.d2m();
  const double d12 = d.d12(), d21 = d.d21();

  const double gg_plus = p.g_1plus * p.g_2plus;
  const double gg_minus = p.g_1minus * p.g_2minus;
  const double gg_cross_a = p.g_1plus * p.g_2minus;  // Q1 -> bus, Q2 -> coupler
  const double gg_cross_b = p.g_1minus * p.g_2plus;  // Q1 -> coupler, Q2 -> bus

  ZetaTerms t;

  if (gg_plus != 0.0) {
    t.bus_two_photon = 2.0 * sq(gg_plus) * inv(d1p + d2p + p.alpha_plus, "D1+ + D2+ + alpha+") *
                       sq(inv(d1p, "D1+") + inv(d2p, "D2+"));
  }
  if (gg_minus != 0.0) {
    t.coupler_two_photon = 2.0 * sq(gg_minus) *
                           inv(d1m + d2m + p.alpha_minus, "D1- + D2- + alpha-") *
                           sq(inv(d1m, "D1-") + inv(d2m, "D2-"));
  }

  const double via_q1 = (gg_plus != 0.0 ? gg_plus * inv(d1p, "D1+") : 0.0) +
                        (gg_minus != 0.0 ? gg_minus * inv(d1m, "D1-") : 0.0);
  if (via_q1 != 0.0)
    t.qubit2_anharmonic =
        sq(via_q1) * (2.0 * inv(d12 + p.alpha_2, "D12 + alpha2") - inv(d12, "D12"));

  const double via_q2 = (gg_plus != 0.0 ? gg_plus * inv(d2p, "D2+") : 0.0) +
                        (gg_minus != 0.0 ? gg_minus * inv(d2m, "D2-") : 0.0);
  if (via_q2 != 0.0)
    t.qubit1_anharmonic =
        sq(via_q2) * (2.0 * inv(d21 + p.alpha_1, "D21 + alpha1") - inv(d21, "D21"));

  // [a (1/D1+ + 1/D2-) + b (1/D1- + 1/D2+)]^2 / (D1+ + D2-). Both sums share
  // the numerator S = D1+ + D2- = D1- + D2+, so the term equals
  // S [a/(D1+ D2-) + b/(D1- D2+)]^2 and stays finite when S -> 0.
  if (gg_cross_a != 0.0 || gg_cross_b != 0.0) {
    const double s = d1p + d2m;
    const double a = gg_cross_a != 0.0 ? gg_cross_a * inv(d1p, "D1+") * inv(d2m, "D2-") : 0.0;
    const double b = gg_cross_b != 0.0 ? gg_cross_b * inv(d1m, "D1-") * inv(d2p, "D2+") : 0.0;
    t.mixed_coupler = s * sq(a + b);
  }

  const auto ratio = [](double g, double delta, const char* name, int power) {
    if (g == 0.0) return 0.0;
    const double x = inv(delta, name);
    return g * g * (power == 2 ? x * x : x);
  };
  t.normalization_1 = -(ratio(p.g_1plus, d1p, "D1+", 2) + ratio(p.g_1minus, d1m, "D1-", 2)) *
                      (ratio(p.g_2plus, d2p, "D2+", 1) + ratio(p.g_2minus, d2m, "D2-", 1));
  t.normalization_2 = -(ratio(p.g_2plus, d2p, "D2+", 2) + ratio(p.g_2minus, d2m, "D2-", 2)) *
                      (ratio(p.g_1plus, d1p, "D1+", 1) + ratio(p.g_1minus, d1m, "D1-", 1));
  return t;
}

StraddlingReport straddling_ok(const DeviceParams& p, double omega_minus) {
  StraddlingReport r;
  if (!(omega_minus < p.omega_1 && omega_minus < p.omega_2))
    r.violations.push_back("coupler below qubits: omega_minus < omega_1, omega_2 fails");
  if (!(p.omega_1 < p.omega_plus && p.omega_2 < p.omega_plus))
    r.violations.push_back("bus above qubits: omega_1, omega_2 < omega_plus fails");
  if (!(std::abs(p.omega_1 - p.omega_2) < std::min(p.alpha_1, p.alpha_2)))
    r.violations.push_back("straddling: |omega_1 - omega_2| < min(alpha_1, alpha_2) fails");
  r.ok = r.violations.empty();
  return r;
}

double exchange_J(const DeviceParams& p, double omega_minus) {
  const DetuningSet d = detunings(p, omega_minus);
  double j = 0.0;
  if (const double gg = p.g_1plus * p.g_2plus; gg != 0.0)
    j += 0.5 * gg * (inv(d.d1p(), "w1 - w+") + inv(d.d2p(), "w2 - w+"));
  if (const double gg = p.g_1minus * p.g_2minus; gg != 0.0)
    j += 0.5 * gg * (inv(d.d1m(), "w1 - w-") + inv(d.d2m(), "w2 - w-"));
  return j;
}

double exchange_J_slope(const DeviceParams& p, double omega_minus) {
  const double gg = p.g_1minus * p.g_2minus;
  if (gg == 0.0) return 0.0;
  const DetuningSet d = detunings(p, omega_minus);
  return 0.5 * gg * (sq(inv(d.d1m(), "w1 - w-")) + sq(inv(d.d2m(), "w2 - w-")));
}

IswapStrengths iswap_strengths(const DeviceParams& p, double omega_minus) {
  const DetuningSet d = detunings(p, omega_minus);
  double bus = 0.0;
  if (const double gg = p.g_1plus * p.g_2plus; gg != 0.0)
    bus = gg * (inv(d.d1p(), "D1+") + inv(d.d2p(), "D2+"));
  double ground = 0.0, excited = 0.0;
  if (const double gg = p.g_1minus * p.g_2minus; gg != 0.0) {
    ground = gg * (inv(d.d1m(), "D1-") + inv(d.d2m(), "D2-"));
    excited = 2.0 * gg *
                  (inv(d.d1m() + p.alpha_minus, "D1- + alpha-") +
                   inv(d.d2m() + p.alpha_minus, "D2- + alpha-")) -
              ground;
  }
  return {0.5 * (bus + ground), 0.5 * (bus + excited)};
}

namespace {

struct DerivativeShape {
  double ground;   // 1/D1-^2 + 1/D2-^2
  double excited;  // 2/(D1- + a-)^2 + 2/(D2- + a-)^2 - ground
};

DerivativeShape derivative_shape(const DeviceParams& p, double omega_minus) {
  const DetuningSet d = detunings(p, omega_minus);
  const double ground = sq(inv(d.d1m(), "D1-")) + sq(inv(d.d2m(), "D2-"));
  const double shifted = 2.0 * sq(inv(d.d1m() + p.alpha_minus, "D1- + alpha-")) +
                         2.0 * sq(inv(d.d2m() + p.alpha_minus, "D2- + alpha-"));
  return {ground, shifted - ground};
}

}  // namespace

IswapStrengths iswap_flux_derivatives(const DeviceParams& p, double omega_minus,
                                      double flux_slope) {
  const DerivativeShape s = derivative_shape(p, omega_minus);
  const double gg = p.g_1minus * p.g_2minus;
  return {0.5 * gg * s.ground * flux_slope, 0.5 * gg * s.excited * flux_slope};
}

double iswap_derivative_ratio(const DeviceParams& p, double omega_minus) {
  const DerivativeShape s = derivative_shape(p, omega_minus);
  if (std::abs(s.excited) <= 1e-12 * std::abs(s.ground))
    throw PoleError("dJ1/dPhi (flux-insensitive excited-coupler exchange)", s.excited);
  return std::abs(s.ground / s.excited);
}

Populations effective_exchange_populations(double j_eff, double t, int initial, double phase) {
  if (initial < 0 || initial > 3) throw DomainError("initial computational state must be 0..3");
  using C = std::complex<double>;
  // Basis index 2*n1 + n2; a1' a2 maps |01> (1) to |10> (2).
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(2, 1) = j_eff * std::polar(1.0, -phase);
  h(1, 2) = std::conj(h(2, 1));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases[k] = std::polar(1.0, -es.eigenvalues()[k] * t);
  const Eigen::Matrix4cd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Vector4cd psi = u.col(initial);
  Populations out{};
  for (int k = 0; k < 4; ++k) out[k] = std::norm(C(psi[k]));
  return out;
}

double full_swap_time(double j_eff) {
  if (j_eff == 0.0) throw DomainError("no transfer without exchange coupling");
  return std::numbers::pi / (2.0 * std::abs(j_eff));
}

double coupling_for_swap_time(double duration) {
  if (!(duration > 0.0)) throw DomainError("swap duration must be positive");
  return std::numbers::pi / (2.0 * duration);
}

}  // namespace zzsim
