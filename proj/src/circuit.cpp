// circuit.cpp — circuit parameter derivation and fluxonium solver

#include "qptsim/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qptsim/numerics.hpp"

namespace qptsim::circuit {

namespace {
constexpr const char* kModule = "circuit";
constexpr double kPi = std::numbers::pi;

void validate_elements(const CircuitElements& e, bool two_qubit) {
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0))
            fail_validation(kModule, "invalid_elements", std::string(name) + " must be > 0");
    };
    positive(e.C_r, "C_r");
    positive(e.C_q, "C_q");
    positive(e.C_g, "C_g");
    positive(e.L_r, "L_r");
    positive(e.L_1, "L_1");
    positive(e.L_2, "L_2");
    positive(e.hbar, "hbar");
    positive(e.Phi0, "Phi0");
    positive(e.d, "d");
    if (e.E_J < 0.0) fail_validation(kModule, "invalid_elements", "E_J must be >= 0");
    if (!(e.x_i > 0.0 && e.x_i < e.d))
        fail_validation(kModule, "invalid_elements", "x_i must satisfy 0 < x_i < d");
    (void)two_qubit;
}

// Single-level eigensolve of the fluxonium Hamiltonian at a fixed basis size.
void fluxonium_solve(double c, double l, double ej, double phi_ext, double hbar, double phi0,
                     std::size_t basis, double& omega_q, double& phi0_q, double* levels) {
    const double omega0 = 1.0 / std::sqrt(l * c);
    const double phi_zpf = std::sqrt(hbar / (2.0 * c * omega0));

    num::ComplexMatrix phi(basis, basis);
    for (std::size_t m = 1; m < basis; ++m) {
        const double v = phi_zpf * std::sqrt(static_cast<double>(m));
        phi(m - 1, m) = v;
        phi(m, m - 1) = v;
    }
    // cos((Phi + Phi_ext)/Phi0) through the eigenbasis of the truncated Phi.
    const auto pe = num::eigh(phi);
    num::ComplexMatrix h(basis, basis);
    for (std::size_t i = 0; i < basis; ++i)
        h(i, i) = hbar * omega0 * (static_cast<double>(i) + 0.5);
    if (ej != 0.0) {
        num::ComplexMatrix wd = pe.eigenvectors;
        for (std::size_t i = 0; i < basis; ++i)
            for (std::size_t k = 0; k < basis; ++k)
                wd(i, k) *= std::cos((pe.eigenvalues[k] + phi_ext) / phi0);
        h -= ej * (wd * pe.eigenvectors.adjoint());
    }

    const auto he = num::eigh(h);
    levels[0] = he.eigenvalues[0];
    levels[1] = he.eigenvalues[1];
    levels[2] = basis > 2 ? he.eigenvalues[2] : he.eigenvalues[1];
    omega_q = (he.eigenvalues[1] - he.eigenvalues[0]) / hbar;
    num::cx me = 0.0;
    for (std::size_t i = 0; i < basis; ++i)
        for (std::size_t j = 0; j < basis; ++j)
            me += std::conj(he.eigenvectors(i, 0)) * phi(i, j) * he.eigenvectors(j, 1);
    phi0_q = std::abs(me);
}

} // namespace

CircuitElements CircuitElements::dimensionless() {
    CircuitElements e;
    e.hbar = 1.0;
    e.Phi0 = 1.0;
    e.Phi_ext = kPi;
    return e;
}

double c_sigma_sq(double C_r, double C_q, double C_g) {
    return C_r * C_g + C_r * C_q + C_g * C_q;
}

double l_sigma_sq(double L_r, double L_1, double L_2) {
    return L_r * L_1 + L_r * L_2 + L_1 * L_2;
}

double matched_inductance(double L_1, double L_r) {
    if (!(L_1 > 0.0) || !(L_r > 0.0))
        fail_validation(kModule, "invalid_elements", "matched_inductance requires positive inputs");
    if (!(L_1 > L_r))
        fail_validation(kModule, "no_matched_inductance",
                        "no positive matched inductance: requires L_1 > L_r");
    return 2.0 * L_1 * L_r / (L_1 - L_r);
}

FluxoniumLevels fluxonium_levels(double C_q_bar, double L_q_bar, double E_J, double Phi_ext,
                                 std::size_t basis, double hbar, double Phi0) {
    if (basis < 20)
        fail_validation(kModule, "invalid_basis", "fluxonium_levels requires basis >= 20");
    if (!(C_q_bar > 0.0) || !(L_q_bar > 0.0) || !(hbar > 0.0) || !(Phi0 > 0.0) || E_J < 0.0)
        fail_validation(kModule, "invalid_elements", "fluxonium_levels requires positive arguments");
    if (!std::isfinite(Phi_ext))
        fail_validation(kModule, "invalid_elements", "fluxonium_levels requires a finite Phi_ext");

    FluxoniumLevels out;
    double levels[3] = {0.0, 0.0, 0.0};
    fluxonium_solve(C_q_bar, L_q_bar, E_J, Phi_ext, hbar, Phi0, basis, out.omega_q, out.phi0_q,
                    levels);
    out.basis_used = basis;
    while (true) {
        const std::size_t next = 2 * out.basis_used;
        if (next > 2048)
            fail_numerical(kModule, "fluxonium_no_convergence",
                           "fluxonium solver did not converge by basis = 2048");
        double wq = 0.0, pq = 0.0, lv[3] = {0.0, 0.0, 0.0};
        fluxonium_solve(C_q_bar, L_q_bar, E_J, Phi_ext, hbar, Phi0, next, wq, pq, lv);
        const bool ok = std::abs(wq - out.omega_q) <= 1e-8 * std::abs(wq) &&
                        std::abs(pq - out.phi0_q) <= 1e-8 * std::abs(pq);
        out.omega_q = wq;
        out.phi0_q = pq;
        out.e0 = lv[0];
        out.e1 = lv[1];
        out.e2 = lv[2];
        out.basis_used = next;
        if (ok) break;
    }
    return out;
}

namespace {

// Coupling formulas shared by the one- and two-qubit derivations; the barred
// parameters differ, the structure does not.
void fill_couplings(const CircuitElements& e, DerivedCircuitParams& p) {
    p.k = kPi / e.d;
    p.Omega_r = e.mode_velocity_scale * kPi / std::sqrt(e.L_r * e.C_r);
    const double kx = p.k * e.x_i;
    const double s2 = std::sin(2.0 * kx);
    if (std::abs(s2) < 1e-12)
        fail_validation(kModule, "degenerate_position",
                        "degenerate mode coupling position: sin(2 k x_i) = 0");
    p.omega_r = std::abs(s2) * p.Omega_r * std::sqrt((e.C_r * e.L_r) / (p.C_r_bar * p.L_r_bar));

    const double sn = std::sin(kx), cs = std::cos(kx);
    const double root_h = std::sqrt(e.hbar);
    p.g_x = 2.0 * std::sqrt(std::abs(cs / sn)) * sn * (std::sqrt(p.Omega_r * e.L_r) / p.L_g_bar) *
            std::pow((e.C_r * p.L_r_bar) / (p.C_r_bar * e.L_r), 0.25) * p.phi0_q / root_h;
    p.g_y = 2.0 * std::sqrt(std::abs(sn / cs)) * cs * std::sqrt(p.Omega_r * e.C_r) *
            (p.C_q_bar / p.C_g_bar) * std::pow((p.C_r_bar * e.L_r) / (e.C_r * p.L_r_bar), 0.25) *
            p.omega_q * p.phi0_q / root_h;
}

double effective_phi_ext(const CircuitElements& e) {
    return std::isnan(e.Phi_ext) ? kPi * e.Phi0 : e.Phi_ext;
}

} // namespace

DerivedCircuitParams derive_one_qubit(const CircuitElements& e, std::size_t fluxonium_basis) {
    validate_elements(e, false);
    DerivedCircuitParams p;
    p.n_qubits = 1;
    p.C_sigma_sq = c_sigma_sq(e.C_r, e.C_q, e.C_g);
    p.L_sigma_sq = l_sigma_sq(e.L_r, e.L_1, e.L_2);
    p.C_r_bar = p.C_sigma_sq / (e.C_q + e.C_g);
    p.L_r_bar = p.L_sigma_sq / (e.L_1 + e.L_2);
    p.C_q_bar = p.C_sigma_sq / (e.C_r + e.C_g);
    p.L_q_bar = p.L_sigma_sq / (e.L_1 + e.L_r);
    p.C_g_bar = p.C_sigma_sq / e.C_g;
    p.L_g_bar = p.L_sigma_sq / e.L_1;

    const auto fl = fluxonium_levels(p.C_q_bar, p.L_q_bar, e.E_J, effective_phi_ext(e),
                                     fluxonium_basis, e.hbar, e.Phi0);
    p.omega_q = fl.omega_q;
    p.phi0_q = fl.phi0_q;
    p.fluxonium_basis_used = fl.basis_used;
    p.two_level_strained = (fl.e2 - fl.e1) < 3.0 * (fl.e1 - fl.e0);

    fill_couplings(e, p);
    return p;
}

DerivedCircuitParams derive_two_qubit(const CircuitElements& e, std::size_t fluxonium_basis) {
    validate_elements(e, true);
    DerivedCircuitParams p;
    p.n_qubits = 2;
    p.C_sigma_sq = e.C_r * e.C_g + e.C_r * e.C_q + 2.0 * e.C_g * e.C_q;
    p.L_sigma_sq = 2.0 * e.L_r * e.L_1 + e.L_r * e.L_2 + e.L_1 * e.L_2;
    p.C_r_bar = p.C_sigma_sq / (e.C_q + e.C_g);
    p.L_r_bar = p.L_sigma_sq / (2.0 * e.L_1 + e.L_2);
    p.C_q_bar = p.C_sigma_sq / (e.C_r + e.C_g * (1.0 + e.C_q / (e.C_g + e.C_q)));
    p.L_q_bar = p.L_sigma_sq / (e.L_1 + e.L_r + e.L_1 * e.L_r / e.L_2);
    p.C_g_bar = p.C_sigma_sq / e.C_g;
    p.L_g_bar = p.L_sigma_sq / e.L_1;
    p.C_qq_bar = p.C_sigma_sq * (e.C_g + e.C_q) / (e.C_g * e.C_g);
    p.L_qq_bar = p.L_sigma_sq * e.L_2 / (e.L_1 * e.L_r);

    const auto fl = fluxonium_levels(p.C_q_bar, p.L_q_bar, e.E_J, effective_phi_ext(e),
                                     fluxonium_basis, e.hbar, e.Phi0);
    p.omega_q = fl.omega_q;
    p.phi0_q = fl.phi0_q;
    p.fluxonium_basis_used = fl.basis_used;
    p.two_level_strained = (fl.e2 - fl.e1) < 3.0 * (fl.e1 - fl.e0);

    fill_couplings(e, p);

    // Qubit-qubit coefficients: Phi^1 Phi^2 / L_qq and Q^1 Q^2 / C_qq with
    // Phi = phi0_q sigma_x and Q = -omega_q C_q_bar phi0_q sigma_y; the
    // sigma sigma products give 2 S_k^2 up to a constant.
    p.D_x = 2.0 * p.phi0_q * p.phi0_q / (e.hbar * p.L_qq_bar);
    const double q_me = p.omega_q * p.C_q_bar * p.phi0_q;
    p.D_y = 2.0 * q_me * q_me / (e.hbar * p.C_qq_bar);
    return p;
}

} // namespace qptsim::circuit
