// models.hpp — assembly of the qubit-resonator Hamiltonians in truncated
// Fock (x) spin space, optionally in a displaced boson frame.

#pragma once

#include <complex>
#include <cstddef>

#include "qptsim/numerics.hpp"

namespace qptsim::models {

using num::ComplexMatrix;
using num::cx;

// One Hamiltonian instance. All energies in units of omega_r unless the
// caller rescales. The sign pair selects the form of the qubit-qubit terms:
// (-,+) for the bare two-qubit circuit, (+,+) for the rotated-frame and
// N-qubit models. resonator_prefactor is 1 for the bare models and 3 for the
// rotated-frame family; qubit_prefactor likewise 1 (omega_q sigma_z/2 per
// qubit, i.e. omega_q S_z) or 2 (2 omega_q S_z).
struct ModelParams {
    double omega_r = 1.0;
    double omega_q = 1.0;
    double g_x = 0.0;
    double g_y = 0.0;
    int n_qubits = 1;
    double D_x = 0.0;
    double D_y = 0.0;
    int sign_x = +1;
    int sign_y = +1;
    int resonator_prefactor = 1;
    int qubit_prefactor = 1;
};

// Boson displacement b -> b + alpha applied before matrix construction.
// Constant terms are retained.
struct FrameSpec {
    cx alpha{0.0, 0.0};
};

// omega_r b'b + omega_q sigma_z/2 - g_x (b+b') sigma_x/2 - i g_y (b-b') sigma_y/2
// on the (n_cut * 2)-dimensional space. Requires n_qubits = 1 and D_x = D_y = 0.
ComplexMatrix build_one_qubit(const ModelParams& p, std::size_t n_cut,
                              const FrameSpec& frame = {});

// resonator_prefactor omega_r d'd + qubit_prefactor omega_q S_z
//   - g_x (d+d') S_x - i g_y (d-d') S_y + sign_x D_x S_x^2 + sign_y D_y S_y^2
// on the n_cut * 2^N space, 2 <= N <= 4.
ComplexMatrix build_multi_qubit(const ModelParams& p, std::size_t n_cut,
                                const FrameSpec& frame = {});

// Collective angular-momentum block: requires g_x = g_y and D_x = D_y.
// resonator_prefactor omega_r t't + qubit_prefactor omega_q J_z
//   + D (j(j+1) - J_z^2) - g (t+t') J_x - i g (t-t') J_y
// on the n_cut * (2j+1) block, with 2j <= N and 2j = N mod 2.
ComplexMatrix build_collective_block(const ModelParams& p, double j, std::size_t n_cut,
                                     const FrameSpec& frame = {});

} // namespace qptsim::models
