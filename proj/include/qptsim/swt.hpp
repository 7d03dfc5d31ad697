// swt.hpp — numerical Schrieffer-Wolff engine: first-order generator S1
// solving [S1, H0] = -V in the eigenbasis of H0, and the projected
// second-order effective Hamiltonian P (H0 + [S1,V]/2) P. Serves as the
// independent oracle for every closed form in module effective.

#pragma once

#include <cstddef>

#include "qptsim/models.hpp"
#include "qptsim/numerics.hpp"

namespace qptsim::swt {

using num::ComplexMatrix;
using num::cx;

// H0 block-diagonal with respect to the low-energy subspace, V coupling it.
// The low subspace is supplied as an explicit isometry (dim x r, orthonormal
// columns); the projector is P = low_basis low_basis†. V may also carry
// elements inside the high sector (the collective models do for j > 1/2);
// S1 is solved on the full support of V.
struct BlockSplit {
    ComplexMatrix H0;
    ComplexMatrix V;
    ComplexMatrix low_basis;
};

// Validates Hermiticity, orthonormality of low_basis, P H0 (1-P) = 0 and
// P V P = 0 (all within 1e-10 of the input scale).
BlockSplit make_block_split(ComplexMatrix h0, ComplexMatrix v, ComplexMatrix low_basis);

ComplexMatrix projector(const BlockSplit& split);

struct SWResult {
    ComplexMatrix S1;    // anti-Hermitian generator
    ComplexMatrix H_eff; // r x r in low_basis coordinates (empty for generator-only)
    double residual = 0.0; // max |[S1, H0] + V|
};

// S1 only. Errors on a near-degenerate coupled pair:
// |E_i - E_j| < 1e-8 ||H0|| with |V_ij| > 1e-12 ||V|| in the H0 eigenbasis.
SWResult sw_generator(const BlockSplit& split);

// S1 plus H_eff = low_basis† (H0 + [S1,V]/2) low_basis.
SWResult sw_effective(const BlockSplit& split);

// The paper's standard splits, for tests and the verification suite.

// Spin-down low subspace of the one-qubit model.
BlockSplit one_qubit_split(const models::ModelParams& p, std::size_t n_cut);

// Two-qubit model split on the qubit-sector ground state (the fermionic
// vacuum of the Jordan-Wigner diagonalization).
BlockSplit two_qubit_split(const models::ModelParams& p, std::size_t n_cut);

// Collective block split on one spin level |j, m_z>.
BlockSplit collective_split(const models::ModelParams& p, double j, double m_z,
                            std::size_t n_cut);

} // namespace qptsim::swt
