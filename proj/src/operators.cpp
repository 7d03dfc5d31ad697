// operators.cpp — construction of bosonic, spin and symmetry operators

#include "qptsim/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qptsim::ops {

namespace {
constexpr const char* kModule = "operators";

ComplexMatrix pauli(char axis) {
    // Basis (|down>, |up>): index 0 is the sigma_z = -1 ground state.
    ComplexMatrix m(2, 2);
    switch (axis) {
        case 'x': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'y': m(0, 1) = cx(0.0, 1.0); m(1, 0) = cx(0.0, -1.0); break;
        case 'z': m(0, 0) = -1.0; m(1, 1) = 1.0; break;
        case '+': m(1, 0) = 1.0; break;
        case '-': m(0, 1) = 1.0; break;
    }
    return m;
}

// I (x) ... (x) op (x) ... (x) I with op at position `qubit` (0-based,
// qubit 0 most significant).
ComplexMatrix embed(const ComplexMatrix& op, std::size_t qubit, std::size_t n_qubits) {
    ComplexMatrix m = ComplexMatrix::identity(1);
    for (std::size_t q = 0; q < n_qubits; ++q)
        m = num::kron(m, q == qubit ? op : ComplexMatrix::identity(2));
    return m;
}

bool is_half_integer_nonneg(double j) {
    if (j < 0.0) return false;
    const double twoj = 2.0 * j;
    return std::abs(twoj - std::round(twoj)) <= 1e-9;
}
} // namespace

FockOperators fock(std::size_t n_cut) {
    if (n_cut < 2)
        fail_validation(kModule, "invalid_cutoff",
                        "fock requires n_cut >= 2, got " + std::to_string(n_cut));
    FockOperators f;
    f.n_cut = n_cut;
    f.a = ComplexMatrix(n_cut, n_cut);
    for (std::size_t m = 1; m < n_cut; ++m)
        f.a(m - 1, m) = std::sqrt(static_cast<double>(m));
    f.a_dag = f.a.adjoint();
    f.n = f.a_dag * f.a;
    return f;
}

SpinOperators spins(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 12)
        fail_validation(kModule, "invalid_qubit_count",
                        "spins requires 1 <= N <= 12, got " + std::to_string(n_qubits));
    SpinOperators s;
    s.n_qubits = n_qubits;
    const std::size_t dim = std::size_t{1} << n_qubits;
    s.Sx = ComplexMatrix(dim, dim);
    s.Sy = ComplexMatrix(dim, dim);
    s.Sz = ComplexMatrix(dim, dim);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        s.sx.push_back(embed(pauli('x'), q, n_qubits));
        s.sy.push_back(embed(pauli('y'), q, n_qubits));
        s.sz.push_back(embed(pauli('z'), q, n_qubits));
        s.sp.push_back(embed(pauli('+'), q, n_qubits));
        s.sm.push_back(embed(pauli('-'), q, n_qubits));
        s.Sx += 0.5 * s.sx.back();
        s.Sy += 0.5 * s.sy.back();
        s.Sz += 0.5 * s.sz.back();
    }
    return s;
}

AngularMomentumBlock angular_momentum_block(double j) {
    if (!is_half_integer_nonneg(j))
        fail_validation(kModule, "invalid_spin_number",
                        "angular_momentum_block requires 2j to be a non-negative integer");
    AngularMomentumBlock b;
    b.j = j;
    b.dim = static_cast<std::size_t>(std::lround(2.0 * j)) + 1;
    b.j_squared = j * (j + 1.0);
    ComplexMatrix jp(b.dim, b.dim); // raising, <j,m+1|J+|j,m> = sqrt(j(j+1)-m(m+1))
    ComplexMatrix jz(b.dim, b.dim);
    for (std::size_t k = 0; k < b.dim; ++k) {
        const double m = -j + static_cast<double>(k);
        jz(k, k) = m;
        if (k + 1 < b.dim) jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.adjoint();
    b.Jz = jz;
    b.Jx = 0.5 * (jp + jm);
    b.Jy = cx(0.0, -0.5) * (jp - jm);
    return b;
}

SymmetryOperators symmetry_ops(std::size_t n_cut, std::size_t n_qubits) {
    if (n_cut < 1) fail_validation(kModule, "invalid_cutoff", "symmetry_ops requires n_cut >= 1");
    if (n_qubits < 1 || n_qubits > 12)
        fail_validation(kModule, "invalid_qubit_count", "symmetry_ops requires 1 <= N <= 12");
    const std::size_t sdim = std::size_t{1} << n_qubits;
    const std::size_t dim = n_cut * sdim;
    SymmetryOperators out;
    out.parity = ComplexMatrix(dim, dim);
    out.excitation = ComplexMatrix(dim, dim);
    for (std::size_t m = 0; m < n_cut; ++m)
        for (std::size_t q = 0; q < sdim; ++q) {
            const std::size_t idx = m * sdim + q;
            const std::size_t ups = static_cast<std::size_t>(std::popcount(q));
            const std::size_t total = m + ups;
            out.excitation(idx, idx) = static_cast<double>(total);
            out.parity(idx, idx) = (total % 2 == 0) ? 1.0 : -1.0;
        }
    return out;
}

SymmetryOperators block_symmetry_ops(std::size_t n_cut, std::size_t n_qubits, double j) {
    if (!is_half_integer_nonneg(j) || 2.0 * j > static_cast<double>(n_qubits) + 1e-9)
        fail_validation(kModule, "invalid_spin_number", "block_symmetry_ops requires 0 <= 2j <= N");
    const std::size_t bdim = static_cast<std::size_t>(std::lround(2.0 * j)) + 1;
    const std::size_t dim = n_cut * bdim;
    SymmetryOperators out;
    out.parity = ComplexMatrix(dim, dim);
    out.excitation = ComplexMatrix(dim, dim);
    for (std::size_t m = 0; m < n_cut; ++m)
        for (std::size_t k = 0; k < bdim; ++k) {
            const std::size_t idx = m * bdim + k;
            // m_z + N/2 spin excitations; integer because 2j = N mod 2.
            const double mz = -j + static_cast<double>(k);
            const long total = static_cast<long>(m) +
                               std::lround(mz + 0.5 * static_cast<double>(n_qubits));
            out.excitation(idx, idx) = static_cast<double>(total);
            out.parity(idx, idx) = (total % 2 == 0) ? 1.0 : -1.0;
        }
    return out;
}

} // namespace qptsim::ops
