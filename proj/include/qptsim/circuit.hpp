// circuit.hpp — raw circuit element values to quantized Hamiltonian
// parameters: effective (barred) capacitances/inductances, resonator mode
// quantization, fluxonium level solving, and the coupling formulas.

#pragma once

#include <cstddef>
#include <limits>

#include "qptsim/error.hpp"

namespace qptsim::circuit {

inline constexpr double kHbarSI = 1.054571817e-34;      // J s
inline constexpr double kElementaryChargeSI = 1.602176634e-19; // C
inline constexpr double kFluxQuantumSI = kHbarSI / (2.0 * kElementaryChargeSI); // hbar/(2e)

struct CircuitElements {
    double C_r = 0.0; // F
    double C_q = 0.0;
    double C_g = 0.0;
    double L_r = 0.0; // H
    double L_1 = 0.0;
    double L_2 = 0.0;
    double E_J = 0.0;     // J
    double Phi_ext = std::numeric_limits<double>::quiet_NaN(); // Wb; NaN = default pi * Phi0
    double x_i = 0.0;     // qubit cell position, m
    double d = 0.0;       // resonator length, m
    double hbar = kHbarSI;
    double Phi0 = kFluxQuantumSI;
    // The resonator mode frequency prefactor (the paper leaves the lattice
    // constant in Omega_r unspecified); Omega_r = scale * pi / sqrt(L_r C_r).
    double mode_velocity_scale = 1.0;

    // hbar = Phi0 = 1, Phi_ext = pi; for reduced-unit studies and golden files.
    static CircuitElements dimensionless();
};

struct DerivedCircuitParams {
    double C_sigma_sq = 0.0, L_sigma_sq = 0.0;
    double C_r_bar = 0.0, C_q_bar = 0.0, C_g_bar = 0.0;
    double L_r_bar = 0.0, L_q_bar = 0.0, L_g_bar = 0.0;
    double C_qq_bar = 0.0, L_qq_bar = 0.0; // two-qubit case only
    double Omega_r = 0.0;  // bare resonator frequency, rad/s
    double k = 0.0;        // pi / d
    double omega_r = 0.0;  // dressed resonator frequency
    double omega_q = 0.0;  // qubit splitting from the fluxonium levels
    double phi0_q = 0.0;   // |<g| Phi_q |e>|
    double g_x = 0.0, g_y = 0.0;
    double D_x = 0.0, D_y = 0.0; // two-qubit case only
    int n_qubits = 1;
    bool two_level_strained = false; // E2 - E1 < 3 (E1 - E0)
    std::size_t fluxonium_basis_used = 0;
};

// 2 L_1 L_r / (L_1 - L_r); requires L_1 > L_r. At this value the inductive
// qubit-qubit coefficient obeys D_x = g_x'^2 / omega_r'.
double matched_inductance(double L_1, double L_r);

struct FluxoniumLevels {
    double omega_q = 0.0; // (E1 - E0) / hbar
    double phi0_q = 0.0;  // |<E0| Phi |E1>|
    double e0 = 0.0, e1 = 0.0, e2 = 0.0; // J
    std::size_t basis_used = 0;
};

// Diagonalizes Q^2/2C + Phi^2/2L - E_J cos((Phi + Phi_ext)/Phi0) in the
// harmonic-oscillator basis of the quadratic part, doubling the basis until
// both outputs change by < 1e-8 relative (basis capped at 2048).
FluxoniumLevels fluxonium_levels(double C_q_bar, double L_q_bar, double E_J, double Phi_ext,
                                 std::size_t basis, double hbar = kHbarSI,
                                 double Phi0 = kFluxQuantumSI);

DerivedCircuitParams derive_one_qubit(const CircuitElements& e, std::size_t fluxonium_basis);
DerivedCircuitParams derive_two_qubit(const CircuitElements& e, std::size_t fluxonium_basis);

// The symmetric combination terms, exposed for the permutation-symmetry checks.
double c_sigma_sq(double C_r, double C_q, double C_g);
double l_sigma_sq(double L_r, double L_1, double L_2);

} // namespace qptsim::circuit
