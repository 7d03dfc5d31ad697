// models.cpp — Hamiltonian matrix builders

#include "qptsim/models.hpp"

#include <cmath>
#include <string>

#include "qptsim/operators.hpp"

namespace qptsim::models {

namespace {
constexpr const char* kModule = "models";

void validate_common(const ModelParams& p) {
    if (!(p.omega_r > 0.0)) fail_validation(kModule, "invalid_params", "omega_r must be > 0");
    if (!(p.omega_q > 0.0)) fail_validation(kModule, "invalid_params", "omega_q must be > 0");
    if (p.n_qubits < 1) fail_validation(kModule, "invalid_params", "n_qubits must be >= 1");
    if (p.sign_x != 1 && p.sign_x != -1)
        fail_validation(kModule, "invalid_params", "sign_x must be +1 or -1");
    if (p.sign_y != 1 && p.sign_y != -1)
        fail_validation(kModule, "invalid_params", "sign_y must be +1 or -1");
    if (p.resonator_prefactor != 1 && p.resonator_prefactor != 3)
        fail_validation(kModule, "invalid_params", "resonator_prefactor must be 1 or 3");
    if (p.qubit_prefactor != 1 && p.qubit_prefactor != 2)
        fail_validation(kModule, "invalid_params", "qubit_prefactor must be 1 or 2");
}

// Core assembly over a generic spin representation (collective S_k on the
// full product space, or J_k on one block).
ComplexMatrix assemble(const ModelParams& p, std::size_t n_cut, const FrameSpec& frame,
                       const ComplexMatrix& spin_x, const ComplexMatrix& spin_y,
                       const ComplexMatrix& qubit_diag) {
    const auto f = ops::fock(n_cut);
    const std::size_t sdim = spin_x.rows();
    const auto ib = ComplexMatrix::identity(n_cut);
    const auto is = ComplexMatrix::identity(sdim);

    ComplexMatrix b = f.a;
    for (std::size_t m = 0; m < n_cut; ++m) b(m, m) += frame.alpha;
    const ComplexMatrix bd = b.adjoint();

    ComplexMatrix h = p.resonator_prefactor * p.omega_r * num::kron(bd * b, is);
    h += num::kron(ib, qubit_diag);
    if (p.g_x != 0.0) h -= p.g_x * num::kron(b + bd, spin_x);
    if (p.g_y != 0.0) h += cx(0.0, -p.g_y) * num::kron(b - bd, spin_y);
    if (p.D_x != 0.0) h += static_cast<double>(p.sign_x) * p.D_x * num::kron(ib, spin_x * spin_x);
    if (p.D_y != 0.0) h += static_cast<double>(p.sign_y) * p.D_y * num::kron(ib, spin_y * spin_y);
    return h;
}
} // namespace

ComplexMatrix build_one_qubit(const ModelParams& p, std::size_t n_cut, const FrameSpec& frame) {
    validate_common(p);
    if (p.n_qubits != 1)
        fail_validation(kModule, "invalid_params", "build_one_qubit requires n_qubits = 1");
    if (p.D_x != 0.0 || p.D_y != 0.0)
        fail_validation(kModule, "invalid_params", "build_one_qubit requires D_x = D_y = 0");
    const auto s = ops::spins(1);
    const ComplexMatrix qubit = p.qubit_prefactor * p.omega_q * s.Sz; // omega_q sigma_z/2
    return assemble(p, n_cut, frame, s.Sx, s.Sy, qubit);
}

ComplexMatrix build_multi_qubit(const ModelParams& p, std::size_t n_cut, const FrameSpec& frame) {
    validate_common(p);
    if (p.n_qubits > 4)
        fail_validation(kModule, "too_many_qubits",
                        "full tensor-product build is limited to N <= 4; use "
                        "build_collective_block for larger N");
    if (p.n_qubits < 2)
        fail_validation(kModule, "invalid_params", "build_multi_qubit requires 2 <= n_qubits");
    const auto s = ops::spins(static_cast<std::size_t>(p.n_qubits));
    const ComplexMatrix qubit = p.qubit_prefactor * p.omega_q * s.Sz;
    return assemble(p, n_cut, frame, s.Sx, s.Sy, qubit);
}

ComplexMatrix build_collective_block(const ModelParams& p, double j, std::size_t n_cut,
                                     const FrameSpec& frame) {
    validate_common(p);
    if (p.g_x != p.g_y)
        fail_validation(kModule, "invalid_params",
                        "build_collective_block requires g_x = g_y");
    if (p.D_x != p.D_y || p.sign_x != +1 || p.sign_y != +1)
        fail_validation(kModule, "invalid_params",
                        "build_collective_block requires D_x = D_y with (+,+) signs");
    const double twoj = 2.0 * j;
    if (j < 0.0 || std::abs(twoj - std::round(twoj)) > 1e-9)
        fail_validation(kModule, "invalid_spin_number", "2j must be a non-negative integer");
    const long twoj_i = std::lround(twoj);
    if (twoj_i > p.n_qubits || (twoj_i - p.n_qubits) % 2 != 0)
        fail_validation(kModule, "invalid_spin_number",
                        "block j must satisfy 2j <= N and 2j = N mod 2, got j = " +
                            std::to_string(j) + " for N = " + std::to_string(p.n_qubits));

    const auto blk = ops::angular_momentum_block(j);
    // D Jx^2 + D Jy^2 = D (j(j+1) - Jz^2) within the block; it is folded into
    // the diagonal here, so the generic D path must stay off.
    ComplexMatrix qubit(blk.dim, blk.dim);
    for (std::size_t k = 0; k < blk.dim; ++k) {
        const double mz = -j + static_cast<double>(k);
        qubit(k, k) = p.qubit_prefactor * p.omega_q * mz + p.D_x * (blk.j_squared - mz * mz);
    }
    ModelParams boson_only = p;
    boson_only.D_x = 0.0;
    boson_only.D_y = 0.0;
    return assemble(boson_only, n_cut, frame, blk.Jx, blk.Jy, qubit);
}

} // namespace qptsim::models
