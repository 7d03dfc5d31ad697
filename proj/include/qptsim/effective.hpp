// effective.hpp — closed-form low-energy theory: dimensionless couplings,
// quadratic boson forms, Bogoliubov spectrum and squeezing, superradiant
// displaced frame, phase classification, two-qubit fermionic levels and the
// N-qubit effective gap.
//
// Energies are in units of omega_r (Omega_r for the N-qubit operations)
// unless noted; the coupling ratio R = omega_q / omega_r carries the scale.

#pragma once

#include <complex>
#include <string>

#include "qptsim/models.hpp"

namespace qptsim::effective {

using num::cx;

struct Couplings {
    double lambda_x = 0.0; // g_x / sqrt(omega_r omega_q)
    double lambda_y = 0.0;
    double ratio = 1.0;    // omega_q / omega_r
    double lambda = 0.0;   // symmetric-case g / sqrt(omega_r omega_q); NaN when g_x != g_y
};

Couplings couplings(double omega_r, double omega_q, double g_x, double g_y);
Couplings couplings(const models::ModelParams& p);

// A b'b + B (b^2 + b'^2) + C0, coefficients in units of omega_r.
struct QuadraticBosonForm {
    double A = 0.0;
    double B = 0.0;
    double C0 = 0.0;
};

// Normal-phase effective form: A = 1 - (lx^2+ly^2)/2, B = (ly^2-lx^2)/4,
// C0 = -(lx^2+ly^2)/4 - R/2.
QuadraticBosonForm normal_effective(const Couplings& c);

struct BogoliubovResult {
    double epsilon = 0.0; // eta * sqrt(A^2 - 4B^2) when stable, NaN otherwise
    double r = 0.0;       // squeezing, 1/4 ln((A-2B)/(A+2B)); NaN when unstable/critical
    int eta = +1;         // sign of A; -1 diagnoses the lambda^2 sum > 2 regime
    bool stable = false;  // A^2 >= 4 B^2
    bool critical = false; // A = +-2B, squeeze parameter undefined
};

BogoliubovResult bogoliubov(const QuadraticBosonForm& q);

enum class PhaseLabel { Normal, SuperradiantX, SuperradiantY, U1Line, Critical };

const char* phase_name(PhaseLabel p);

PhaseLabel classify_phase(const Couplings& c, double tol = 1e-12);

struct SuperradiantFrame {
    cx alpha{0.0, 0.0};          // displacement (theta = 0 representative on the U1 line)
    double alpha_sq = 0.0;       // |alpha|^2 = (R/4)(l^2 - 1/l^2), l the dominant coupling
    double omega_q_tilde = 0.0;  // rescaled qubit frequency, units of omega_r
    double lambda_x_tilde = 0.0;
    double lambda_y_tilde = 0.0;
    double epsilon_tilde = 0.0;  // units of omega_r; exactly 0 on the U1 line
    double r_tilde = 0.0;        // -inf on the U1 line (flat Goldstone direction)
    double theta = 0.0;          // free U(1) phase, canonical 0
    PhaseLabel branch = PhaseLabel::SuperradiantX;
};

// Requires max(lambda_x, lambda_y) > 1.
SuperradiantFrame superradiant_frame(const Couplings& c);

struct GroundStateInfo {
    double energy = 0.0;   // units of omega_r
    double n_photon = 0.0; // 0 in the normal phase, |alpha|^2 otherwise
    PhaseLabel phase = PhaseLabel::Normal;
};

GroundStateInfo ground_state(const Couplings& c);

enum class TwoQubitRegime { SmallX, SmallY, LargeX, LargeY, Boundary };

// Jordan-Wigner levels of H = 2 omega_q' S_z + D_x S_x^2 + D_y S_y^2 with
// D_k = lambda_k'^2 omega_q'. Energies in units of omega_q'.
struct TwoQubitLevels {
    double Lambda_1 = 0.0; // (s + w)/2, s = lx'^2 + ly'^2
    double Lambda_2 = 0.0; // |w - s|/2
    double xi_1 = 0.0;     // sqrt(1+4/w) - sqrt(1-4/w)
    double xi_2 = 0.0;     // sqrt(1+4/w) + sqrt(1-4/w)
    double w = 0.0;        // sqrt((lx'^2-ly'^2)^2 + 16)
    double b_x[3] = {0.0, 0.0, 0.0};
    double b_y[3] = {0.0, 0.0, 0.0};
    TwoQubitRegime regime = TwoQubitRegime::SmallX;
};

TwoQubitLevels two_qubit_levels(double lambda_x_p, double lambda_y_p);

struct EffectiveGap {
    double value = 0.0;          // >= 0 when stable; negative value flags instability
    std::string formula_branch;  // which case applied
    bool stable = true;
    bool boundary = false;       // on a branch boundary, value ambiguous
};

// Effective two-qubit boson gap (units of omega_r'); real and positive away
// from branch boundaries — the transition is inhibited.
EffectiveGap two_qubit_gap(double lambda_x_p, double lambda_y_p);

// N-qubit effective gap (units of Omega_r): closes at lambda = sqrt(6) only
// for odd N.
EffectiveGap n_qubit_gap(double lambda, int n_qubits);

struct QubitGroundLabel {
    double j = 0.0;
    double m_z = 0.0;
    bool degenerate = false; // D = 2 Omega_q level crossing
};

// Ground state of 2 Omega_q J_z + D (j(j+1) - J_z^2) over all blocks:
// (N/2, -N/2) for D < 2 Omega_q, else (0,0) / (1/2,-1/2) by qubit parity.
QubitGroundLabel qubit_ground_label(int n_qubits, double D, double omega_q);

} // namespace qptsim::effective
