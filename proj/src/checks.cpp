// checks.cpp — acceptance criteria and module invariants as named checks

#include "qptsim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "qptsim/circuit.hpp"
#include "qptsim/effective.hpp"
#include "qptsim/models.hpp"
#include "qptsim/numerics.hpp"
#include "qptsim/operators.hpp"
#include "qptsim/scan.hpp"
#include "qptsim/swt.hpp"

namespace qptsim::checks {

namespace {

using num::ComplexMatrix;
using num::cx;

std::string strf(const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

CheckResult check(std::string name, bool pass, std::string detail) {
    return CheckResult{std::move(name), pass, std::move(detail)};
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = u(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cx v{u(rng), u(rng)};
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

models::ModelParams one_qubit_params(double lambda_x, double lambda_y, double ratio) {
    models::ModelParams p;
    p.omega_r = 1.0;
    p.omega_q = ratio;
    p.g_x = lambda_x * std::sqrt(ratio);
    p.g_y = lambda_y * std::sqrt(ratio);
    return p;
}

models::ModelParams rotated_two_qubit_params(double lxp, double lyp, double ratio) {
    models::ModelParams p;
    p.omega_r = 1.0;
    p.omega_q = ratio;
    p.n_qubits = 2;
    p.g_x = lxp * std::sqrt(ratio);
    p.g_y = lyp * std::sqrt(ratio);
    p.D_x = p.g_x * p.g_x; // g^2 / omega_r
    p.D_y = p.g_y * p.g_y;
    p.resonator_prefactor = 3;
    p.qubit_prefactor = 2;
    return p;
}

// The normal-phase effective Hamiltonian as a truncated matrix:
// omega_r b'b - (omega_r lx^2/4)(b+b')^2 + (omega_r ly^2/4)(b-b')^2 - omega_q/2.
ComplexMatrix normal_effective_matrix(double lambda_x, double lambda_y, double omega_r,
                                      double omega_q, std::size_t n_cut) {
    const auto f = ops::fock(n_cut);
    const auto plus = f.a + f.a_dag;
    const auto minus = f.a - f.a_dag;
    ComplexMatrix h = omega_r * f.n;
    h -= (omega_r * lambda_x * lambda_x / 4.0) * (plus * plus);
    h += (omega_r * lambda_y * lambda_y / 4.0) * (minus * minus);
    h -= (omega_q / 2.0) * ComplexMatrix::identity(n_cut);
    return h;
}

std::vector<scan::GridRow> analytic_ground_rows(double lx0, double lx1, std::size_t n,
                                                bool on_ray, double ray_sum, double ratio) {
    std::vector<scan::GridRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = lx0 + (lx1 - lx0) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double ly = on_ray ? ray_sum - lx : 0.0;
        auto& r = rows[i];
        r.lambda_x = lx;
        r.lambda_y = ly;
        r.g_x = lx * std::sqrt(ratio);
        r.g_y = ly * std::sqrt(ratio);
        const auto c = effective::couplings(1.0, ratio, r.g_x, r.g_y);
        r.ground_energy = effective::ground_state(c).energy;
    }
    return rows;
}

// ------------------ acceptance criteria ------------------------------------

CheckResult criterion_normal_phase_gap() {
    const double ratio = 200.0;
    double worst = 0.0;
    for (double lx : {0.3, 0.5, 0.7})
        for (double ly : {0.3, 0.5, 0.7}) {
            const auto p = one_qubit_params(lx, ly, ratio);
            const auto s = scan::spectrum(p, scan::ModelKind::OneQubit, -1.0, {});
            const double predicted = std::sqrt((1.0 - lx * lx) * (1.0 - ly * ly));
            worst = std::max(worst, std::abs(s.gap - predicted) / predicted);
        }
    return check("normal_phase_gap", worst <= 0.02,
                 strf("max relative gap error %.3g over 9 points at R=200 (tolerance 0.02)",
                      worst));
}

CheckResult criterion_order_parameter() {
    const double ratio = 50.0;
    const double alpha_sq = 0.25 * ratio * (2.25 - 1.0 / 2.25); // 22.569
    const auto ps = one_qubit_params(1.5, 0.0, ratio);
    const auto c = effective::couplings(ps);
    models::FrameSpec frame;
    frame.alpha = effective::superradiant_frame(c).alpha;
    const auto s = scan::spectrum(ps, scan::ModelKind::OneQubit, -1.0, frame);
    const double rel = std::abs(s.n_photon - alpha_sq) / alpha_sq;

    const auto p0 = one_qubit_params(0.9, 0.0, ratio);
    const auto s0 = scan::spectrum(p0, scan::ModelKind::OneQubit, -1.0, {});
    const bool pass = rel <= 0.05 && s0.n_photon < 0.5;
    return check("superradiant_order_parameter", pass,
                 strf("n_G = %.4f vs |alpha|^2 = %.4f (rel %.3g, tol 0.05); "
                      "normal side n_G = %.3g (< 0.5)",
                      s.n_photon, alpha_sq, rel, s0.n_photon));
}

CheckResult criterion_goldstone() {
    double gaps[3] = {0.0, 0.0, 0.0};
    const double ratios[3] = {20.0, 50.0, 100.0};
    for (int i = 0; i < 3; ++i) {
        const auto p = one_qubit_params(1.3, 1.3, ratios[i]);
        const auto s = scan::spectrum(p, scan::ModelKind::OneQubit, -1.0, {});
        gaps[i] = s.gap;
    }
    const auto c = effective::couplings(1.0, 50.0, 1.3 * std::sqrt(50.0), 1.3 * std::sqrt(50.0));
    const double eps_tilde = effective::superradiant_frame(c).epsilon_tilde;
    const bool pass = gaps[0] > gaps[1] && gaps[1] > gaps[2] && eps_tilde == 0.0;
    return check("goldstone_softening", pass,
                 strf("gaps %.4g > %.4g > %.4g across R = 20, 50, 100; epsilon_tilde = %g",
                      gaps[0], gaps[1], gaps[2], eps_tilde));
}

CheckResult criterion_transition_orders() {
    const double ratio = 50.0;
    const auto line = analytic_ground_rows(0.5, 1.5, 101, false, 0.0, ratio);
    const auto rep1 = scan::detect_transitions(line, scan::Axis::GX);
    bool second_ok = rep1.points.size() == 1 && rep1.points[0].order == 2 &&
                     std::abs(line[rep1.points[0].index].lambda_x - 1.0) <= 0.0101;

    const auto ray = analytic_ground_rows(1.05, 1.55, 101, true, 2.6, ratio);
    const auto rep2 = scan::detect_transitions(ray, scan::Axis::GX);
    bool first_ok = rep2.points.size() == 1 && rep2.points[0].order == 1 &&
                    std::abs(ray[rep2.points[0].index].lambda_x - 1.3) <= 0.0051;
    const double at1 = rep1.points.empty() ? -1.0 : line[rep1.points[0].index].lambda_x;
    const double at2 = rep2.points.empty() ? -1.0 : ray[rep2.points[0].index].lambda_x;
    return check("transition_orders", second_ok && first_ok,
                 strf("second-order flag at lambda_x = %.3f (expect 1.00 +- 0.01), "
                      "first-order flag at lambda_x = %.3f (expect 1.30 +- 0.005)",
                      at1, at2));
}

CheckResult criterion_two_qubit_inhibition() {
    std::size_t tested = 0;
    double min_gap = 1e300;
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t k = 0; k < 40; ++k) {
            const double lx = 3.0 * static_cast<double>(i) / 39.0;
            const double ly = 3.0 * static_cast<double>(k) / 39.0;
            if (std::abs(lx * ly - 2.0) < 0.05) continue; // branch boundary band
            const auto g = effective::two_qubit_gap(lx, ly);
            ++tested;
            if (!g.stable || g.value <= 0.0) min_gap = std::min(min_gap, -1.0);
            else min_gap = std::min(min_gap, g.value);
        }
    const auto p = rotated_two_qubit_params(2.5, 2.5, 50.0);
    const auto s = scan::spectrum(p, scan::ModelKind::MultiQubit, -1.0, {});
    const bool pass = min_gap > 0.0 && s.n_photon < 5.0;
    return check("two_qubit_inhibition", pass,
                 strf("gap real and positive on %zu grid points (min %.4g omega_r'); "
                      "n_G = %.3g at lambda' = (2.5, 2.5), R = 50 (< 5)",
                      tested, min_gap, s.n_photon));
}

CheckResult criterion_two_qubit_level_oracle(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x2b1ull);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const auto s2 = ops::spins(2);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double lx = u(rng), ly = u(rng);
        const auto lv = effective::two_qubit_levels(lx, ly);
        double expected[4] = {0.0, lv.Lambda_1, lv.Lambda_2, lv.Lambda_1 + lv.Lambda_2};
        std::sort(expected, expected + 4);
        ComplexMatrix h = 2.0 * s2.Sz;
        h += (lx * lx) * (s2.Sx * s2.Sx);
        h += (ly * ly) * (s2.Sy * s2.Sy);
        const auto e = num::eigh(h);
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs((e.eigenvalues[i] - e.eigenvalues[0]) - expected[i]));
    }
    return check("two_qubit_level_oracle", worst <= 1e-10,
                 strf("max |Lambda spectrum - 4x4 diagonalization| = %.3g over 100 samples "
                      "(tolerance 1e-10)",
                      worst));
}

CheckResult criterion_n_parity() {
    const double root6 = std::sqrt(6.0);
    const auto g3 = effective::n_qubit_gap(root6, 3);
    const auto g2 = effective::n_qubit_gap(root6, 2);
    const auto g4 = effective::n_qubit_gap(root6, 4);
    const bool closed_ok = std::abs(g3.value) <= 1e-12 && g2.value == 3.0 && g4.value == 3.0;

    auto window_ratio = [](int n_qubits) {
        scan::GridSpec spec;
        spec.model = scan::ModelKind::Collective;
        spec.n_qubits = n_qubits;
        spec.lambda_x_min = 2.2;
        spec.lambda_x_max = 2.7;
        spec.nx = 6;
        spec.ny = 1;
        spec.ratio = 50.0;
        spec.resonator_prefactor = 3;
        spec.qubit_prefactor = 2;
        const auto rows = scan::scan_grid(spec);
        const double lo = rows.front().n_photon;
        const double hi = rows.back().n_photon;
        return hi / std::max(lo, 1e-6);
    };
    const double r3 = window_ratio(3);
    const double r2 = window_ratio(2);
    const bool pass = closed_ok && r3 > 10.0 && r2 < 2.0;
    return check("n_parity_effect", pass,
                 strf("gap(sqrt6): N=3 -> %.2g, N=2 -> %g, N=4 -> %g; n_G rise over "
                      "lambda in [2.2, 2.7]: N=3 %.3gx (> 10), N=2 %.3gx (< 2)",
                      g3.value, g2.value, g4.value, r3, r2));
}

CheckResult criterion_sw_oracles() {
    // Residuals on the three model splits.
    double worst_resid = 0.0;
    {
        auto p = one_qubit_params(0.1, 0.05, 1e4);
        const auto split = swt::one_qubit_split(p, 12);
        const auto r = swt::sw_generator(split);
        worst_resid = std::max(worst_resid, r.residual / split.V.max_abs());
    }
    {
        auto p = rotated_two_qubit_params(0.3, 0.2, 1e4);
        const auto split = swt::two_qubit_split(p, 12);
        const auto r = swt::sw_generator(split);
        worst_resid = std::max(worst_resid, r.residual / split.V.max_abs());
    }
    models::ModelParams pc;
    pc.omega_r = 1.0;
    pc.omega_q = 1e4;
    pc.n_qubits = 3;
    pc.g_x = pc.g_y = 0.5 * std::sqrt(pc.omega_q);
    pc.D_x = pc.D_y = pc.g_x * pc.g_x;
    pc.resonator_prefactor = 3;
    pc.qubit_prefactor = 2;
    {
        const auto split = swt::collective_split(pc, 1.5, -1.5, 10);
        const auto r = swt::sw_generator(split);
        worst_resid = std::max(worst_resid, r.residual / split.V.max_abs());
    }

    // One-qubit H_eff against the closed-form quadratic Hamiltonian.
    const double ratio = 1e4;
    const std::size_t n_cut = 12;
    auto p1 = one_qubit_params(0.1, 0.05, ratio);
    const auto eff = swt::sw_effective(swt::one_qubit_split(p1, n_cut));
    const auto ref = normal_effective_matrix(0.1, 0.05, 1.0, ratio, n_cut);
    const double h_rel = num::max_abs_diff(eff.H_eff, ref) / ref.max_abs();

    // Appendix-level closed forms for the collective generator, in the
    // omega_q/omega_r -> infinity limit realized with omega_r = 0.
    models::ModelParams pn;
    pn.omega_r = 0.0;
    pn.omega_q = 1.0;
    pn.n_qubits = 3;
    pn.g_x = pn.g_y = 0.2;
    pn.D_x = pn.D_y = 0.6;
    pn.resonator_prefactor = 3;
    pn.qubit_prefactor = 2;
    const double j = 1.5;
    const std::size_t nb = 8;
    const auto split = swt::collective_split(pn, j, -1.5, nb);
    const auto gen = swt::sw_generator(split);
    const std::size_t sdim = 4;
    double worst_ab = 0.0;
    for (double mz : {-1.5, -0.5, 0.5}) {
        const double num_a = j * (j + 1.0) - mz * (mz + 1.0);
        const double a_ref = pn.g_x * std::sqrt(num_a) / (-2.0 * pn.omega_q + pn.D_x * (1.0 + 2.0 * mz));
        const double num_b = j * (j + 1.0) - mz * (mz - 1.0);
        const double b_ref = pn.g_x * std::sqrt(num_b) / (2.0 * pn.omega_q + pn.D_x * (1.0 - 2.0 * mz));
        const auto idx = [&](std::size_t n, double m) {
            return n * sdim + static_cast<std::size_t>(std::lround(m + j));
        };
        for (std::size_t n = 1; n + 1 < nb; ++n) {
            const cx a_num = gen.S1(idx(n - 1, mz + 1.0), idx(n, mz));
            worst_ab = std::max(worst_ab,
                                std::abs(a_num - cx(a_ref * std::sqrt(double(n)))));
            if (mz > -j) {
                const cx b_num = gen.S1(idx(n + 1, mz - 1.0), idx(n, mz));
                worst_ab = std::max(worst_ab,
                                    std::abs(b_num - cx(b_ref * std::sqrt(double(n + 1)))));
            }
        }
    }
    const bool pass = worst_resid <= 1e-9 && h_rel <= 1e-3 && worst_ab <= 1e-10;
    return check("sw_engine_oracles", pass,
                 strf("max residual/|V| = %.3g (tol 1e-9); H_eff vs closed form rel %.3g "
                      "(tol 1e-3); a/b element error %.3g (tol 1e-10)",
                      worst_resid, h_rel, worst_ab));
}

CheckResult criterion_circuit_formulas() {
    // Matched inductance makes D_x = g_x'^2 / omega_r'.
    auto e = circuit::CircuitElements::dimensionless();
    e.C_r = 1.0;
    e.C_q = 0.05;
    e.C_g = 0.02;
    e.L_r = 1.0;
    e.L_1 = 3.0;
    e.L_2 = circuit::matched_inductance(e.L_1, e.L_r);
    e.E_J = 0.7;
    e.d = 1.0;
    e.x_i = 0.25;
    const auto two = circuit::derive_two_qubit(e, 32);
    const double dx_rel = std::abs(two.D_x - two.g_x * two.g_x / two.omega_r) /
                          std::abs(two.g_x * two.g_x / two.omega_r);

    // Decoupling limits on the SI reference elements.
    circuit::CircuitElements ref;
    ref.C_r = 1e-12;
    ref.C_q = 5e-15;
    ref.C_g = 1e-15;
    ref.L_r = 2e-9;
    ref.L_1 = 1e-10;
    ref.L_2 = 4e-9;
    ref.E_J = 2e-23;
    ref.d = 0.01;
    ref.x_i = 0.0025;
    const auto base = circuit::derive_one_qubit(ref, 32);
    auto small_cg = ref;
    small_cg.C_g *= 1e-13;
    const auto lim_cg = circuit::derive_one_qubit(small_cg, 32);
    auto small_l1 = ref;
    small_l1.L_1 *= 1e-13;
    const auto lim_l1 = circuit::derive_one_qubit(small_l1, 32);
    const double gy_ratio = std::abs(lim_cg.g_y / base.g_y);
    const double gx_ratio = std::abs(lim_l1.g_x / base.g_x);

    // Harmonic fluxonium limit.
    const auto harm = circuit::fluxonium_levels(2.0, 0.5, 0.0, std::numbers::pi, 32, 1.0, 1.0);
    const double w_expected = 1.0; // 1/sqrt(LC)
    const double w_rel = std::abs(harm.omega_q - w_expected) / w_expected;

    const bool pass = dx_rel <= 1e-10 && gy_ratio < 1e-12 && gx_ratio < 1e-12 && w_rel <= 1e-10;
    return check("circuit_formulas", pass,
                 strf("matched D_x rel %.3g (tol 1e-10); decoupling ratios g_y %.3g, g_x %.3g "
                      "(< 1e-12); harmonic omega_q rel %.3g (tol 1e-10)",
                      dx_rel, gy_ratio, gx_ratio, w_rel));
}

CheckResult criterion_symmetry_suite() {
    const std::size_t n_cut = 12;
    double worst_parity = 0.0;
    auto parity_norm = [&](const ComplexMatrix& h, const ComplexMatrix& pi) {
        return num::commutator(h, pi).max_abs() / std::max(h.max_abs(), 1.0);
    };

    // One qubit, generic couplings.
    {
        const auto p = one_qubit_params(0.8, 0.5, 30.0);
        const auto h = models::build_one_qubit(p, n_cut);
        const auto sym = ops::symmetry_ops(n_cut, 1);
        worst_parity = std::max(worst_parity, parity_norm(h, sym.parity));
    }
    // Two qubits, both sign conventions; three qubits.
    auto p2 = rotated_two_qubit_params(0.7, 0.4, 30.0);
    {
        const auto sym = ops::symmetry_ops(n_cut, 2);
        worst_parity = std::max(worst_parity,
                                parity_norm(models::build_multi_qubit(p2, n_cut), sym.parity));
        auto bare = p2;
        bare.sign_x = -1;
        bare.resonator_prefactor = 1;
        bare.qubit_prefactor = 1;
        worst_parity = std::max(worst_parity,
                                parity_norm(models::build_multi_qubit(bare, n_cut), sym.parity));
    }
    {
        auto p3 = rotated_two_qubit_params(0.6, 0.6, 30.0);
        p3.n_qubits = 3;
        const auto sym = ops::symmetry_ops(n_cut, 3);
        worst_parity = std::max(worst_parity,
                                parity_norm(models::build_multi_qubit(p3, n_cut), sym.parity));
        for (double j : {1.5, 0.5}) {
            const auto h = models::build_collective_block(p3, j, n_cut);
            const auto bsym = ops::block_symmetry_ops(n_cut, 3, j);
            worst_parity = std::max(worst_parity, parity_norm(h, bsym.parity));
        }
    }

    // U(1): conserved for the JC point and the rotated two-qubit model,
    // broken by the bare two-qubit sign convention.
    const auto sym1 = ops::symmetry_ops(n_cut, 1);
    const auto jc = models::build_one_qubit(one_qubit_params(0.6, 0.6, 30.0), n_cut);
    const double jc_u1 = num::commutator(jc, sym1.excitation).max_abs() / jc.max_abs();

    const auto sym2 = ops::symmetry_ops(n_cut, 2);
    auto psym = rotated_two_qubit_params(0.5, 0.5, 30.0);
    const auto h19 = models::build_multi_qubit(psym, n_cut);
    const double h19_u1 = num::commutator(h19, sym2.excitation).max_abs() / h19.max_abs();

    auto pbare = psym;
    pbare.sign_x = -1;
    pbare.resonator_prefactor = 1;
    pbare.qubit_prefactor = 1;
    const auto h17 = models::build_multi_qubit(pbare, n_cut);
    const double h17_u1 = num::commutator(h17, sym2.excitation).max_abs() / h17.max_abs();

    const bool pass =
        worst_parity <= 1e-12 && jc_u1 <= 1e-12 && h19_u1 <= 1e-12 && h17_u1 > 1e-6;
    return check("symmetry_suite", pass,
                 strf("max |[H,Pi]|/|H| = %.3g (tol 1e-12); U(1): JC %.3g, rotated 2q %.3g "
                      "(both 0), bare 2q %.3g (nonzero)",
                      worst_parity, jc_u1, h19_u1, h17_u1));
}

// ------------------ module invariants ---------------------------------------

CheckResult invariant_eigh_trace(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xe16ull);
    double worst = 0.0;
    for (std::size_t n : {8u, 64u, 512u}) {
        const auto h = random_hermitian(n, rng);
        const auto e = num::eigh(h);
        double sum = 0.0;
        for (double v : e.eigenvalues) sum += v;
        worst = std::max(worst, std::abs(sum - std::real(h.trace())) /
                                    (static_cast<double>(n) * std::max(h.max_abs(), 1.0)));
    }
    return check("numerics.eigh_trace_sum", worst <= 1e-9,
                 strf("max scaled trace defect %.3g up to dimension 512", worst));
}

CheckResult invariant_eigh_unitary_invariance(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x17eull);
    const auto h = random_hermitian(32, rng);
    const auto u = num::eigh(random_hermitian(32, rng)).eigenvectors;
    const auto e1 = num::eigh(h);
    const auto e2 = num::eigh(u * h * u.adjoint());
    double worst = 0.0;
    for (std::size_t i = 0; i < 32; ++i)
        worst = std::max(worst, std::abs(e1.eigenvalues[i] - e2.eigenvalues[i]));
    return check("numerics.eigh_unitary_invariance", worst <= 1e-9 * std::max(h.max_abs(), 1.0),
                 strf("max eigenvalue shift %.3g under conjugation", worst));
}

CheckResult invariant_kron_mixed_product(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x2f0ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rnd = [&](std::size_t r, std::size_t c) {
        ComplexMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = cx{u(rng), u(rng)};
        return m;
    };
    const auto a = rnd(2, 2), b = rnd(2, 2), c = rnd(2, 2), d = rnd(2, 2);
    const double diff = num::max_abs_diff(num::kron(a, b) * num::kron(c, d),
                                          num::kron(a * c, b * d));
    return check("numerics.kron_mixed_product", diff <= 1e-13,
                 strf("max |(A(x)B)(C(x)D) - AC(x)BD| = %.3g", diff));
}

CheckResult invariant_dicke_multiplicities() {
    bool ok = true;
    std::string note;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto s = ops::spins(n);
        ComplexMatrix s2 = s.Sx * s.Sx + s.Sy * s.Sy + s.Sz * s.Sz;
        const auto e = num::eigh(s2);
        std::size_t total = 0;
        double j = (n % 2 == 0) ? 0.0 : 0.5;
        for (; j <= 0.5 * static_cast<double>(n) + 1e-9; j += 1.0) {
            const double target = j * (j + 1.0);
            std::size_t count = 0;
            for (double ev : e.eigenvalues)
                if (std::abs(ev - target) < 1e-8) ++count;
            if (count % static_cast<std::size_t>(std::lround(2.0 * j + 1.0)) != 0) ok = false;
            total += count;
        }
        if (total != (std::size_t{1} << n)) ok = false;
    }
    return check("operators.dicke_multiplicities", ok,
                 "sum over j of (2j+1) mult(j) accounts for all 2^N spin states, N <= 4");
}

CheckResult invariant_block_vs_collective() {
    const double omega_q = 1.0, d_coeff = 0.7;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto s = ops::spins(n);
        ComplexMatrix s2 = s.Sx * s.Sx + s.Sy * s.Sy + s.Sz * s.Sz;
        ComplexMatrix h = 2.0 * omega_q * s.Sz + d_coeff * (s2 - s.Sz * s.Sz);
        auto full = num::eigh(h).eigenvalues;

        std::vector<double> merged;
        const auto s2e = num::eigh(s2);
        double j = (n % 2 == 0) ? 0.0 : 0.5;
        for (; j <= 0.5 * static_cast<double>(n) + 1e-9; j += 1.0) {
            std::size_t count = 0;
            for (double ev : s2e.eigenvalues)
                if (std::abs(ev - j * (j + 1.0)) < 1e-8) ++count;
            const std::size_t mult = count / static_cast<std::size_t>(std::lround(2.0 * j + 1.0));
            const auto blk = ops::angular_momentum_block(j);
            for (std::size_t k = 0; k < blk.dim; ++k) {
                const double mz = -j + static_cast<double>(k);
                const double ev = 2.0 * omega_q * mz + d_coeff * (j * (j + 1.0) - mz * mz);
                for (std::size_t rep = 0; rep < mult; ++rep) merged.push_back(ev);
            }
        }
        std::sort(merged.begin(), merged.end());
        for (std::size_t i = 0; i < full.size(); ++i)
            worst = std::max(worst, std::abs(full[i] - merged[i]));
    }
    return check("operators.block_vs_collective", worst <= 1e-9,
                 strf("max spectral mismatch %.3g between product space and j blocks", worst));
}

CheckResult invariant_parity_excitation() {
    const auto sym = ops::symmetry_ops(5, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < sym.parity.rows(); ++i) {
        const double n = std::real(sym.excitation(i, i));
        const cx expi = std::exp(cx(0.0, std::numbers::pi * n));
        worst = std::max(worst, std::abs(expi - sym.parity(i, i)));
    }
    const auto pi2 = sym.parity * sym.parity;
    worst = std::max(worst, num::max_abs_diff(pi2, ComplexMatrix::identity(pi2.rows())));
    return check("operators.parity_excitation", worst <= 1e-12,
                 strf("max |exp(i pi N) - Pi| and |Pi^2 - I| = %.3g", worst));
}

CheckResult invariant_circuit_scaling() {
    circuit::CircuitElements e = circuit::CircuitElements::dimensionless();
    e.C_r = 1.0;
    e.C_q = 0.05;
    e.C_g = 0.01;
    e.L_r = 2.0;
    e.L_1 = 0.1;
    e.L_2 = 4.0;
    e.E_J = 0.5;
    e.d = 1.0;
    e.x_i = 0.25;
    const auto a = circuit::derive_one_qubit(e, 32);
    const double s = 7.3;
    auto e2 = e;
    e2.C_r *= s;
    e2.C_q *= s;
    e2.C_g *= s;
    e2.L_r /= s;
    e2.L_1 /= s;
    e2.L_2 /= s;
    const auto b = circuit::derive_one_qubit(e2, 32);
    const double inv_a = a.Omega_r * std::sqrt(e.L_r * e.C_r);
    const double inv_b = b.Omega_r * std::sqrt(e2.L_r * e2.C_r);
    const double rel = std::abs(inv_a - inv_b) / std::abs(inv_a);

    const double c1 = circuit::c_sigma_sq(1.0, 2.0, 3.0);
    const double c2 = circuit::c_sigma_sq(3.0, 1.0, 2.0);
    const double l1 = circuit::l_sigma_sq(1.5, 2.5, 3.5);
    const double l2 = circuit::l_sigma_sq(3.5, 1.5, 2.5);
    const bool perm = c1 == c2 && l1 == l2;
    return check("circuit.scaling_and_symmetry", rel <= 1e-12 && perm,
                 strf("Omega_r sqrt(L_r C_r) invariance defect %.3g; sigma terms permutation "
                      "symmetric: %s",
                      rel, perm ? "yes" : "no"));
}

CheckResult invariant_fluxonium_monotone() {
    // Deeper Josephson wells push the tunneling splitting down at the
    // half-flux sweet spot.
    double prev = 1e300;
    bool mono = true;
    for (double ej : {1.5, 2.0, 3.0, 4.0}) {
        const auto f = circuit::fluxonium_levels(1.0, 1.0, ej, std::numbers::pi, 32, 1.0, 1.0);
        if (f.omega_q >= prev) mono = false;
        prev = f.omega_q;
    }
    return check("circuit.fluxonium_monotone", mono,
                 "omega_q decreases with E_J in the double-well regime at Phi_ext = pi Phi0");
}

CheckResult invariant_frame_covariance() {
    const auto p = one_qubit_params(0.4, 0.2, 20.0);
    const cx alpha{1.2, 0.3};
    const std::size_t n_cut = 24;
    const std::size_t n_cut_ref =
        n_cut + static_cast<std::size_t>(std::ceil(4.0 * std::norm(alpha)));
    models::FrameSpec frame;
    frame.alpha = alpha;
    const auto e1 = num::eigh(models::build_one_qubit(p, n_cut, frame));
    const auto e2 = num::eigh(models::build_one_qubit(p, n_cut_ref, {}));
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(e1.eigenvalues[i] - e2.eigenvalues[i]));
    return check("models.frame_covariance", worst <= 1e-6,
                 strf("low-lying displaced vs lab spectrum mismatch %.3g (tol 1e-6)", worst));
}

CheckResult invariant_n2_block_equivalence() {
    auto p = rotated_two_qubit_params(0.6, 0.6, 25.0);
    const std::size_t n_cut = 14;
    auto full = num::eigh(models::build_multi_qubit(p, n_cut)).eigenvalues;
    std::vector<double> merged;
    for (double j : {0.0, 1.0}) {
        const auto ev = num::eigh(models::build_collective_block(p, j, n_cut)).eigenvalues;
        merged.insert(merged.end(), ev.begin(), ev.end());
    }
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i)
        worst = std::max(worst, std::abs(full[i] - merged[i]));
    return check("models.n2_block_equivalence", worst <= 1e-9 * 25.0,
                 strf("max |full tensor - block union| = %.3g", worst));
}

CheckResult invariant_epsilon_identity() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int k = 0; k < 50; ++k) {
            const double lx = 2.0 * i / 49.0, ly = 2.0 * k / 49.0;
            const auto c = effective::couplings(1.0, 100.0, lx * 10.0, ly * 10.0);
            const auto bog = effective::bogoliubov(effective::normal_effective(c));
            const double target = (1.0 - lx * lx) * (1.0 - ly * ly);
            if (!bog.stable) {
                if (target > 1e-12) worst = 1.0; // must only destabilize when negative
                continue;
            }
            worst = std::max(worst, std::abs(bog.epsilon * bog.epsilon - target));
        }
    return check("effective.epsilon_identity", worst <= 1e-12,
                 strf("max |epsilon^2 - (1-lx^2)(1-ly^2)| = %.3g on a 50x50 grid", worst));
}

CheckResult invariant_mirror_symmetry() {
    double worst = 0.0;
    for (double lx : {1.2, 1.7, 2.4})
        for (double ly : {0.0, 0.4, 0.9}) {
            const auto cx_ = effective::couplings(1.0, 50.0, lx * std::sqrt(50.0),
                                                  ly * std::sqrt(50.0));
            const auto cy_ = effective::couplings(1.0, 50.0, ly * std::sqrt(50.0),
                                                  lx * std::sqrt(50.0));
            const auto fx = effective::superradiant_frame(cx_);
            const auto fy = effective::superradiant_frame(cy_);
            worst = std::max(worst, std::abs(fx.epsilon_tilde - fy.epsilon_tilde));
            worst = std::max(worst, std::abs(fx.alpha_sq - fy.alpha_sq));
            worst = std::max(worst, std::abs(std::abs(fx.alpha) - std::abs(fy.alpha)));
            const auto gx_ = effective::ground_state(cx_);
            const auto gy_ = effective::ground_state(cy_);
            worst = std::max(worst, std::abs(gx_.energy - gy_.energy));
            worst = std::max(worst, std::abs(gx_.n_photon - gy_.n_photon));
        }
    return check("effective.mirror_symmetry", worst <= 1e-12,
                 strf("max X<->Y mirror defect %.3g", worst));
}

CheckResult invariant_ground_energy_continuity() {
    double worst = 0.0;
    // Across the normal/superradiant boundary.
    for (double ly : {0.0, 0.5}) {
        const auto below = effective::ground_state(
            effective::couplings(1.0, 50.0, (1.0 - 1e-13) * std::sqrt(50.0), ly * std::sqrt(50.0)));
        const auto above = effective::ground_state(
            effective::couplings(1.0, 50.0, (1.0 + 1e-13) * std::sqrt(50.0), ly * std::sqrt(50.0)));
        worst = std::max(worst, std::abs(below.energy - above.energy));
    }
    // Across the U(1) line.
    const double l = 1.4;
    const auto xe = effective::ground_state(
        effective::couplings(1.0, 50.0, l * std::sqrt(50.0), (l - 1e-13) * std::sqrt(50.0)));
    const auto ye = effective::ground_state(
        effective::couplings(1.0, 50.0, (l - 1e-13) * std::sqrt(50.0), l * std::sqrt(50.0)));
    worst = std::max(worst, std::abs(xe.energy - ye.energy));

    // The directional derivative across the U(1) line jumps by
    // (omega_q/2)(l - 1/l^3) dlambda/dg per side.
    const double dl = 1e-6;
    const double sqrtR = std::sqrt(50.0);
    auto eg = [&](double lx, double ly) {
        return effective::ground_state(effective::couplings(1.0, 50.0, lx * sqrtR, ly * sqrtR))
            .energy;
    };
    const double slope_x = (eg(l + dl, l - dl) - eg(l, l)) / dl;      // into the X side
    const double slope_y = (eg(l - dl, l + dl) - eg(l, l)) / dl;      // into the Y side
    const double expected_per_side = 0.5 * 50.0 * (l - 1.0 / (l * l * l));
    // Both directions climb by the same amount: a symmetric kink.
    const double asym = std::abs(slope_x - slope_y) / expected_per_side;
    const double kink_rel =
        std::abs(std::abs(slope_x) - expected_per_side) / expected_per_side;
    const bool pass = worst <= 1e-10 && asym <= 1e-3 && kink_rel <= 1e-3;
    return check("effective.ground_energy_continuity", pass,
                 strf("boundary jump %.3g; first-order kink per side %.6g vs expected %.6g",
                      worst, std::abs(slope_x), expected_per_side));
}

CheckResult invariant_qubit_ground_label() {
    bool ok = true;
    for (int n = 1; n <= 8; ++n)
        for (double dr : {0.5, 1.9, 2.1, 5.0}) {
            const double omega_q = 1.0, d_coeff = dr;
            const auto label = effective::qubit_ground_label(n, d_coeff, omega_q);
            double best = 1e300, best_j = -1.0, best_m = 0.0;
            double j = (n % 2 == 0) ? 0.0 : 0.5;
            for (; j <= 0.5 * n + 1e-9; j += 1.0)
                for (double m = -j; m <= j + 1e-9; m += 1.0) {
                    const double ev = 2.0 * omega_q * m + d_coeff * (j * (j + 1.0) - m * m);
                    if (ev < best - 1e-12) {
                        best = ev;
                        best_j = j;
                        best_m = m;
                    }
                }
            if (std::abs(best_j - label.j) > 1e-9 || std::abs(best_m - label.m_z) > 1e-9) ok = false;
        }
    return check("effective.qubit_ground_label", ok,
                 "label matches brute-force block minimization for N <= 8");
}

CheckResult invariant_n_qubit_gap_continuity() {
    double worst = 0.0;
    for (int n : {1, 2, 3, 4, 5, 7}) {
        const double below = effective::n_qubit_gap(std::sqrt(2.0) * (1.0 - 1e-9), n).value;
        worst = std::max(worst, std::abs(below - 2.0));
        if (n % 2 == 1) {
            const double above = effective::n_qubit_gap(std::sqrt(2.0) * (1.0 + 1e-9), n).value;
            worst = std::max(worst, std::abs(above - 2.0));
        }
    }
    return check("effective.n_qubit_gap_continuity", worst <= 1e-7,
                 strf("gap approaches 2 Omega_r at the level crossing, defect %.3g", worst));
}

CheckResult invariant_sw_unitarity() {
    const auto p = one_qubit_params(0.2, 0.1, 100.0);
    const auto split = swt::one_qubit_split(p, 10);
    const auto gen = swt::sw_generator(split);
    const auto h = split.H0 + split.V;
    const auto u = num::expm(gen.S1);
    const auto uinv = num::expm(-1.0 * gen.S1);
    const auto e1 = num::eigh(h);
    const auto e2 = num::eigh(u * h * uinv);
    double worst = 0.0;
    for (std::size_t i = 0; i < e1.eigenvalues.size(); ++i)
        worst = std::max(worst, std::abs(e1.eigenvalues[i] - e2.eigenvalues[i]));
    return check("swt.unitarity", worst <= 1e-9 * std::max(h.max_abs(), 1.0),
                 strf("spectrum drift under exp(S1) conjugation %.3g", worst));
}

CheckResult invariant_sw_second_order_scaling() {
    const double ratio = 1e4;
    const std::size_t n_cut = 10;
    auto err_at = [&](double lx) {
        const auto p = one_qubit_params(lx, 0.5 * lx, ratio);
        const auto eff = swt::sw_effective(swt::one_qubit_split(p, n_cut));
        const auto ref = normal_effective_matrix(lx, 0.5 * lx, 1.0, ratio, n_cut);
        return num::max_abs_diff(eff.H_eff, ref) / ref.max_abs();
    };
    const double e1 = err_at(0.2), e2 = err_at(0.1), e3 = err_at(0.05);
    const bool pass = e2 < e1 / 1.4 && e3 < e2 / 1.4;
    return check("swt.second_order_scaling", pass,
                 strf("relative H_eff error shrinks with g: %.3g -> %.3g -> %.3g", e1, e2, e3));
}

CheckResult invariant_sw_perturbation_1d(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5d1ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 7;
    ComplexMatrix h0(n, n);
    for (std::size_t i = 0; i < n; ++i) h0(i, i) = 2.0 * static_cast<double>(i) + u(rng);
    ComplexMatrix v(n, n);
    for (std::size_t k = 1; k < n; ++k) {
        const cx val{0.1 * u(rng), 0.1 * u(rng)};
        v(0, k) = val;
        v(k, 0) = std::conj(val);
    }
    ComplexMatrix low(n, 1);
    low(0, 0) = 1.0;
    const auto split = swt::make_block_split(h0, v, low);
    const auto eff = swt::sw_effective(split);
    double expected = std::real(h0(0, 0));
    for (std::size_t k = 1; k < n; ++k)
        expected += std::norm(v(0, k)) / (std::real(h0(0, 0)) - std::real(h0(k, k)));
    const double diff = std::abs(std::real(eff.H_eff(0, 0)) - expected);
    return check("swt.perturbation_theory_1d", diff <= 1e-10,
                 strf("second-order shift defect %.3g", diff));
}

CheckResult invariant_scan_determinism() {
    scan::GridSpec spec;
    spec.model = scan::ModelKind::OneQubit;
    spec.lambda_x_min = 0.0;
    spec.lambda_x_max = 1.5;
    spec.nx = 3;
    spec.lambda_y_min = 0.0;
    spec.lambda_y_max = 1.5;
    spec.ny = 3;
    spec.ratio = 50.0;
    const auto csv1 = scan::to_csv(scan::scan_grid(spec, 1));
    const auto csv2 = scan::to_csv(scan::scan_grid(spec, 1));
    const auto csv4 = scan::to_csv(scan::scan_grid(spec, 4));
    const bool pass = csv1 == csv2 && csv1 == csv4;
    return check("scan.grid_determinism", pass,
                 pass ? "CSV identical across repeated and threaded runs"
                      : "CSV output differs between runs");
}

CheckResult invariant_scan_parity_and_doublet() {
    // Parity is +-1 in the normal phase.
    const auto pn = one_qubit_params(0.5, 0.3, 50.0);
    const auto sn = scan::spectrum(pn, scan::ModelKind::OneQubit, -1.0, {});
    const double parity_defect = std::abs(std::abs(sn.parity) - 1.0);

    // Deep in the superradiant phase the two lowest lab-frame states form a
    // parity doublet with matching photon numbers.
    const auto ps = one_qubit_params(1.5, 0.0, 50.0);
    scan::SpectrumOptions opt;
    opt.initial_n_cut = 64;
    const std::size_t n_cut = 128;
    const auto h = models::build_one_qubit(ps, n_cut);
    const auto e = num::eigh(h);
    const auto f = ops::fock(n_cut);
    auto photon = [&](std::size_t col) {
        num::cx acc = 0.0;
        for (std::size_t a = 0; a < n_cut; ++a)
            for (std::size_t s = 0; s < 2; ++s)
                acc += std::conj(e.eigenvectors(a * 2 + s, col)) *
                       std::real(f.n(a, a)) * e.eigenvectors(a * 2 + s, col);
        return std::real(acc);
    };
    const double n0 = photon(0), n1 = photon(1);
    const double doublet_rel = std::abs(n0 - n1) / std::max(n0, 1.0);
    const bool pass = parity_defect <= 1e-8 && doublet_rel <= 0.01;
    return check("scan.parity_and_doublet", pass,
                 strf("normal-phase |parity| defect %.3g; doublet n_G split %.3g%%",
                      parity_defect, 100.0 * doublet_rel));
}

} // namespace

std::vector<CheckResult> run_acceptance(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(criterion_normal_phase_gap());
    out.push_back(criterion_order_parameter());
    out.push_back(criterion_goldstone());
    out.push_back(criterion_transition_orders());
    out.push_back(criterion_two_qubit_inhibition());
    out.push_back(criterion_two_qubit_level_oracle(seed));
    out.push_back(criterion_n_parity());
    out.push_back(criterion_sw_oracles());
    out.push_back(criterion_circuit_formulas());
    out.push_back(criterion_symmetry_suite());
    return out;
}

std::vector<CheckResult> run_module_invariants(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(invariant_eigh_trace(seed));
    out.push_back(invariant_eigh_unitary_invariance(seed));
    out.push_back(invariant_kron_mixed_product(seed));
    out.push_back(invariant_dicke_multiplicities());
    out.push_back(invariant_block_vs_collective());
    out.push_back(invariant_parity_excitation());
    out.push_back(invariant_circuit_scaling());
    out.push_back(invariant_fluxonium_monotone());
    out.push_back(invariant_frame_covariance());
    out.push_back(invariant_n2_block_equivalence());
    out.push_back(invariant_epsilon_identity());
    out.push_back(invariant_mirror_symmetry());
    out.push_back(invariant_ground_energy_continuity());
    out.push_back(invariant_qubit_ground_label());
    out.push_back(invariant_n_qubit_gap_continuity());
    out.push_back(invariant_sw_unitarity());
    out.push_back(invariant_sw_second_order_scaling());
    out.push_back(invariant_sw_perturbation_1d(seed));
    out.push_back(invariant_scan_determinism());
    out.push_back(invariant_scan_parity_and_doublet());
    return out;
}

} // namespace qptsim::checks
