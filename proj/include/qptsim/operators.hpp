// operators.hpp — elementary quantum operators: truncated bosonic mode,
// Pauli/collective spin, angular-momentum blocks, parity and excitation number.
//
// Basis ordering convention used everywhere in qptsim: boson index major,
// spin index minor. The spin index is the binary string q1..qN with qubit 1
// most significant; bit value 1 means spin up (sigma_+ sigma_- eigenvalue 1).

#pragma once

#include <cstddef>
#include <vector>

#include "qptsim/numerics.hpp"

namespace qptsim::ops {

using num::ComplexMatrix;
using num::cx;

struct FockOperators {
    std::size_t n_cut;  // Fock levels |0>..|n_cut-1>
    ComplexMatrix a;    // annihilation, <m-1|a|m> = sqrt(m)
    ComplexMatrix a_dag;
    ComplexMatrix n;    // a_dag * a
};

// n_cut >= 2.
FockOperators fock(std::size_t n_cut);

struct SpinOperators {
    std::size_t n_qubits;
    std::vector<ComplexMatrix> sx, sy, sz, sp, sm; // per qubit, on the 2^N space
    ComplexMatrix Sx, Sy, Sz;                      // collective sums of sigma/2
};

// 1 <= N <= 12. Memory grows as 4^N; model builders stay at N <= 4.
SpinOperators spins(std::size_t n_qubits);

struct AngularMomentumBlock {
    double j;         // spin number, 2j integral
    std::size_t dim;  // 2j + 1
    ComplexMatrix Jx, Jy, Jz; // basis |j, m_z>, m_z = -j..j ascending
    double j_squared; // j(j+1)
};

AngularMomentumBlock angular_momentum_block(double j);

struct SymmetryOperators {
    ComplexMatrix parity;     // exp(i pi (n + sum sigma+ sigma-)), diagonal +-1
    ComplexMatrix excitation; // n (x) I + I (x) sum sigma+ sigma-
};

SymmetryOperators symmetry_ops(std::size_t n_cut, std::size_t n_qubits);

// Same operators restricted to one angular-momentum block of an N-qubit
// register: excitation counts n + m_z + N/2.
SymmetryOperators block_symmetry_ops(std::size_t n_cut, std::size_t n_qubits, double j);

} // namespace qptsim::ops
