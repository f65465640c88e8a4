#pragma once

#include <array>

#include "zzsim/units.hpp"

// Published reference values and the tolerances they are checked against.
// Frequencies are ordinary (GHz, MHz), fidelities are fractions.
namespace zzsim::anchors {

// Zero-ZZ coupler detunings omega_minus - omega_1, ascending.
inline constexpr std::array<double, 2> kZeroZetaDeviceA_GHz = {-1.47, -0.75};
inline constexpr std::array<double, 2> kZeroZetaDeviceB_GHz = {-0.84, -0.53};
inline constexpr double kZeroZetaTol_GHz = 0.060;
// Window of omega_minus - omega_1 searched for zeros.
inline constexpr double kZeroZetaSearchLo_GHz = -2.5;
inline constexpr double kZeroZetaSearchHi_GHz = -0.3;

// Perturbative vs exact zero crossings, as a fraction of the detuning.
inline constexpr double kCrossingRelTol = 0.05;
// Curve agreement, applied where |zeta|/2pi exceeds the floor and every
// coupled qubit-coupler detuning exceeds the coupling multiple.
inline constexpr double kCurveRelTol = 0.25;
inline constexpr double kCurveZetaFloor_MHz = 0.010;
inline constexpr double kCurveDispersiveMultiple = 4.0;
// Single-coupler-above configuration: zero at this coupler-qubit detuning.
inline constexpr double kConfigCZero_GHz = 0.634;
inline constexpr double kConfigCZeroTol_GHz = 0.015;

// Simultaneous benchmarking on device A with 22 ns gates.
inline constexpr double kRbGateTime = 22e-9;
inline constexpr double kRbLargeZeta_MHz = 2.26;
inline constexpr double kRbSimultaneousZeroZeta = 0.998;
inline constexpr double kRbSimultaneousZeroZetaTol = 0.0015;
inline constexpr double kRbSimultaneousLargeZeta = 0.985;
inline constexpr double kRbSimultaneousLargeZetaTol = 0.003;
inline constexpr double kRbIndividualMin = 0.998;
// Seed-to-seed spread of a fitted fidelity from 100 trials x 9 lengths.
inline constexpr double kRbStatisticalTol = 0.0005;

// Coherence-limited sqrt(iSWAP) on device B.
inline constexpr double kIswapGateTime = 95e-9;
inline constexpr double kCoherenceLimitedFg = 0.984;
inline constexpr double kCoherenceLimitedFgTol = 0.005;

// |dJ0/dPhi / dJ1/dPhi| for device B at its -0.84 GHz zero.
inline constexpr double kDerivativeRatioB = 6.1;
inline constexpr double kDerivativeRatioBTol = 0.5;

// Coupler temperature sweep.
inline constexpr double kThermalTempMax_K = 0.200;
inline constexpr int kThermalPoints = 41;
// Agreement between the p = 0 thermal fidelity and the PTM gate fidelity.
inline constexpr double kThermalGroundMatchTol = 0.005;

}  // namespace zzsim::anchors
