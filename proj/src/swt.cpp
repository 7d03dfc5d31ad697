// swt.cpp — Schrieffer-Wolff generator and projected effective Hamiltonian

#include "qptsim/swt.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qptsim/operators.hpp"

namespace qptsim::swt {

namespace {
constexpr const char* kModule = "swt";
}

BlockSplit make_block_split(ComplexMatrix h0, ComplexMatrix v, ComplexMatrix low_basis) {
    const std::size_t dim = h0.rows();
    if (h0.cols() != dim || v.rows() != dim || v.cols() != dim)
        fail_validation(kModule, "shape_mismatch", "H0 and V must be square and equally sized");
    if (low_basis.rows() != dim || low_basis.cols() == 0 || low_basis.cols() > dim)
        fail_validation(kModule, "shape_mismatch", "low_basis must be dim x r with 1 <= r <= dim");
    if (!h0.is_hermitian(1e-10)) fail_validation(kModule, "not_hermitian", "H0 is not Hermitian");
    if (!v.is_hermitian(1e-10)) fail_validation(kModule, "not_hermitian", "V is not Hermitian");

    const std::size_t r = low_basis.cols();
    const auto gram = low_basis.adjoint() * low_basis;
    if (num::max_abs_diff(gram, ComplexMatrix::identity(r)) > 1e-10)
        fail_validation(kModule, "not_orthonormal", "low_basis columns are not orthonormal");

    const ComplexMatrix p = low_basis * low_basis.adjoint();
    const ComplexMatrix q = ComplexMatrix::identity(dim) - p;
    const double h0_scale = std::max(h0.max_abs(), 1e-300);
    if ((p * h0 * q).max_abs() > 1e-10 * h0_scale)
        fail_validation(kModule, "not_block_diagonal", "P H0 (1-P) != 0");
    const double v_scale = std::max(v.max_abs(), 1e-300);
    if ((p * v * p).max_abs() > 1e-10 * v_scale)
        fail_validation(kModule, "low_block_coupling", "P V P != 0");

    BlockSplit s;
    s.H0 = std::move(h0);
    s.V = std::move(v);
    s.low_basis = std::move(low_basis);
    return s;
}

ComplexMatrix projector(const BlockSplit& split) {
    return split.low_basis * split.low_basis.adjoint();
}

SWResult sw_generator(const BlockSplit& split) {
    const std::size_t dim = split.H0.rows();
    const auto eig = num::eigh(split.H0);
    const ComplexMatrix& u = eig.eigenvectors;
    const ComplexMatrix v_tilde = u.adjoint() * split.V * u;

    double espan = 0.0;
    for (double e : eig.eigenvalues) espan = std::max(espan, std::abs(e));
    const double deg_tol = 1e-8 * std::max(espan, 1e-300);
    const double coup_tol = 1e-12 * std::max(split.V.max_abs(), 1e-300);

    ComplexMatrix s_tilde(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            if (i == j) continue;
            const double de = eig.eigenvalues[i] - eig.eigenvalues[j];
            const cx vij = v_tilde(i, j);
            if (std::abs(de) < deg_tol) {
                if (std::abs(vij) > coup_tol) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "near-degenerate coupled pair: levels %zu and %zu, |dE| = %.3e, "
                                  "|V_ij| = %.3e",
                                  i, j, std::abs(de), std::abs(vij));
                    fail_numerical(kModule, "degenerate_pair", buf);
                }
                continue;
            }
            if (std::abs(vij) > 0.0) s_tilde(i, j) = vij / de;
        }

    SWResult out;
    ComplexMatrix s1 = u * s_tilde * u.adjoint();
    // Exact anti-Hermitization removes rounding drift from the basis changes.
    out.S1 = 0.5 * (s1 - s1.adjoint());
    out.residual = num::max_abs_diff(num::commutator(out.S1, split.H0), -split.V);
    return out;
}

SWResult sw_effective(const BlockSplit& split) {
    SWResult out = sw_generator(split);
    const ComplexMatrix m = split.H0 + 0.5 * num::commutator(out.S1, split.V);
    ComplexMatrix h_eff = split.low_basis.adjoint() * m * split.low_basis;
    out.H_eff = 0.5 * (h_eff + h_eff.adjoint());
    return out;
}

// ---------------------- standard splits --------------------------------------

namespace {

// Boson-diagonal and coupling pieces shared by the split builders. The spin
// representation is generic (full product space or one j block).
BlockSplit assemble_split(double pref_r_omega_r, const ComplexMatrix& spin_diag,
                          double g_x, double g_y, const ComplexMatrix& spin_x,
                          const ComplexMatrix& spin_y, const ComplexMatrix& low_spin_vec,
                          std::size_t n_cut) {
    const auto f = ops::fock(n_cut);
    const std::size_t sdim = spin_diag.rows();
    const auto ib = ComplexMatrix::identity(n_cut);
    const auto is = ComplexMatrix::identity(sdim);

    ComplexMatrix h0 = pref_r_omega_r * num::kron(f.n, is) + num::kron(ib, spin_diag);
    ComplexMatrix v = -g_x * num::kron(f.a + f.a_dag, spin_x);
    v += cx(0.0, -g_y) * num::kron(f.a - f.a_dag, spin_y);

    // Low basis |m> (x) |low_spin>, m ascending.
    ComplexMatrix basis(n_cut * sdim, n_cut);
    for (std::size_t m = 0; m < n_cut; ++m)
        for (std::size_t s = 0; s < sdim; ++s) basis(m * sdim + s, m) = low_spin_vec(s, 0);

    return make_block_split(std::move(h0), std::move(v), std::move(basis));
}

} // namespace

BlockSplit one_qubit_split(const models::ModelParams& p, std::size_t n_cut) {
    if (p.n_qubits != 1)
        fail_validation(kModule, "invalid_params", "one_qubit_split requires n_qubits = 1");
    const auto s = ops::spins(1);
    const ComplexMatrix spin_diag = p.qubit_prefactor * p.omega_q * s.Sz;
    ComplexMatrix down(2, 1);
    down(0, 0) = 1.0; // sigma_z = -1 state
    return assemble_split(p.resonator_prefactor * p.omega_r, spin_diag, 0.5 * p.g_x, 0.5 * p.g_y,
                          s.sx[0], s.sy[0], down, n_cut);
}

BlockSplit two_qubit_split(const models::ModelParams& p, std::size_t n_cut) {
    if (p.n_qubits != 2)
        fail_validation(kModule, "invalid_params", "two_qubit_split requires n_qubits = 2");
    const auto s = ops::spins(2);
    ComplexMatrix spin_diag = p.qubit_prefactor * p.omega_q * s.Sz;
    spin_diag += static_cast<double>(p.sign_x) * p.D_x * (s.Sx * s.Sx);
    spin_diag += static_cast<double>(p.sign_y) * p.D_y * (s.Sy * s.Sy);

    const auto eig = num::eigh(spin_diag);
    ComplexMatrix gs(4, 1);
    for (std::size_t i = 0; i < 4; ++i) gs(i, 0) = eig.eigenvectors(i, 0);
    // Deterministic phase: largest component real positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(gs(i, 0)) > std::abs(gs(imax, 0))) imax = i;
    const cx ph = gs(imax, 0) / std::abs(gs(imax, 0));
    for (std::size_t i = 0; i < 4; ++i) gs(i, 0) /= ph;

    return assemble_split(p.resonator_prefactor * p.omega_r, spin_diag, p.g_x, p.g_y, s.Sx, s.Sy,
                          gs, n_cut);
}

BlockSplit collective_split(const models::ModelParams& p, double j, double m_z,
                            std::size_t n_cut) {
    if (p.g_x != p.g_y || p.D_x != p.D_y)
        fail_validation(kModule, "invalid_params",
                        "collective_split requires g_x = g_y and D_x = D_y");
    const auto blk = ops::angular_momentum_block(j);
    ComplexMatrix spin_diag(blk.dim, blk.dim);
    for (std::size_t k = 0; k < blk.dim; ++k) {
        const double mz = -j + static_cast<double>(k);
        spin_diag(k, k) = p.qubit_prefactor * p.omega_q * mz + p.D_x * (blk.j_squared - mz * mz);
    }
    const long idx = std::lround(m_z + j);
    if (idx < 0 || idx >= static_cast<long>(blk.dim))
        fail_validation(kModule, "invalid_params", "m_z outside the block");
    ComplexMatrix low(blk.dim, 1);
    low(static_cast<std::size_t>(idx), 0) = 1.0;
    return assemble_split(p.resonator_prefactor * p.omega_r, spin_diag, p.g_x, p.g_y, blk.Jx,
                          blk.Jy, low, n_cut);
}

} // namespace qptsim::swt
