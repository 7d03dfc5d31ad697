// test_swt.cpp — Schrieffer-Wolff engine against closed forms

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qptsim/effective.hpp"
#include "qptsim/operators.hpp"
#include "qptsim/swt.hpp"

using namespace qptsim;
using num::ComplexMatrix;
using num::cx;

namespace {

models::ModelParams one_qubit(double lx, double ly, double ratio) {
    models::ModelParams p;
    p.omega_q = ratio;
    p.g_x = lx * std::sqrt(ratio);
    p.g_y = ly * std::sqrt(ratio);
    return p;
}

ComplexMatrix eq10_matrix(double lx, double ly, double omega_q, std::size_t n_cut) {
    const auto f = ops::fock(n_cut);
    const auto plus = f.a + f.a_dag;
    const auto minus = f.a - f.a_dag;
    ComplexMatrix h = f.n;
    h -= (lx * lx / 4.0) * (plus * plus);
    h += (ly * ly / 4.0) * (minus * minus);
    h -= (omega_q / 2.0) * ComplexMatrix::identity(n_cut);
    return h;
}

} // namespace

TEST_CASE("2x2 closed form") {
    ComplexMatrix h0(2, 2);
    h0(0, 0) = 1.0;
    h0(1, 1) = 4.0;
    ComplexMatrix v(2, 2);
    v(0, 1) = cx{0.3, 0.2};
    v(1, 0) = cx{0.3, -0.2};
    ComplexMatrix low(2, 1);
    low(0, 0) = 1.0;
    const auto r = swt::sw_generator(swt::make_block_split(h0, v, low));
    CHECK(std::abs(r.S1(0, 1) - cx{0.3, 0.2} / (1.0 - 4.0)) <= 1e-14);
    CHECK(std::abs(r.S1(1, 0) + std::conj(cx{0.3, 0.2} / (1.0 - 4.0))) <= 1e-14);
    CHECK(r.residual <= 1e-14);
}

TEST_CASE("V = 0 projects H0") {
    ComplexMatrix h0(3, 3);
    h0(0, 0) = -1.0;
    h0(1, 1) = 2.0;
    h0(2, 2) = 5.0;
    ComplexMatrix low(3, 1);
    low(0, 0) = 1.0;
    const auto r = swt::sw_effective(swt::make_block_split(h0, ComplexMatrix(3, 3), low));
    CHECK(r.H_eff.rows() == 1);
    CHECK(std::real(r.H_eff(0, 0)) == doctest::Approx(-1.0));
    CHECK(r.S1.max_abs() == 0.0);
}

TEST_CASE("one-dimensional projector reduces to second-order perturbation theory") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 7;
    ComplexMatrix h0(n, n);
    for (std::size_t i = 0; i < n; ++i) h0(i, i) = 2.0 * double(i) + u(rng);
    ComplexMatrix v(n, n);
    for (std::size_t k = 1; k < n; ++k) {
        const cx val{0.1 * u(rng), 0.1 * u(rng)};
        v(0, k) = val;
        v(k, 0) = std::conj(val);
    }
    ComplexMatrix low(n, 1);
    low(0, 0) = 1.0;
    const auto eff = swt::sw_effective(swt::make_block_split(h0, v, low));
    double expected = std::real(h0(0, 0));
    for (std::size_t k = 1; k < n; ++k)
        expected += std::norm(v(0, k)) / (std::real(h0(0, 0)) - std::real(h0(k, k)));
    CHECK(std::real(eff.H_eff(0, 0)) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("one-qubit generator matches the adiabatic-elimination form") {
    const double ratio = 1e4;
    const auto p = one_qubit(0.1, 0.05, ratio);
    const std::size_t n_cut = 10;
    const auto split = swt::one_qubit_split(p, n_cut);
    const auto gen = swt::sw_generator(split);
    CHECK(gen.residual <= 1e-9 * split.V.max_abs());

    // S = (gx+gy)/(2wq) (b' s- - b s+) + (gx-gy)/(2wq) (b s- - b' s+)
    const auto f = ops::fock(n_cut);
    const auto s = ops::spins(1);
    const double a_coef = (p.g_x + p.g_y) / (2.0 * p.omega_q);
    const double b_coef = (p.g_x - p.g_y) / (2.0 * p.omega_q);
    ComplexMatrix paper = a_coef * (num::kron(f.a_dag, s.sm[0]) - num::kron(f.a, s.sp[0]));
    paper += b_coef * (num::kron(f.a, s.sm[0]) - num::kron(f.a_dag, s.sp[0]));
    const double rel = num::max_abs_diff(gen.S1, paper) / paper.max_abs();
    CHECK(rel <= 5.0 / ratio);
    // Anti-Hermitian by construction.
    CHECK(num::max_abs_diff(gen.S1, -1.0 * gen.S1.adjoint()) <= 1e-14);
}

TEST_CASE("one-qubit effective Hamiltonian matches the quadratic form") {
    const double ratio = 1e4;
    const std::size_t n_cut = 12;
    const auto p = one_qubit(0.1, 0.05, ratio);
    const auto eff = swt::sw_effective(swt::one_qubit_split(p, n_cut));
    const auto ref = eq10_matrix(0.1, 0.05, ratio, n_cut);
    CHECK(num::max_abs_diff(eff.H_eff, ref) / ref.max_abs() <= 1e-3);
}

TEST_CASE("second-order accuracy improves as the coupling shrinks") {
    const double ratio = 1e4;
    const std::size_t n_cut = 10;
    auto err_at = [&](double lx) {
        const auto p = one_qubit(lx, 0.5 * lx, ratio);
        const auto eff = swt::sw_effective(swt::one_qubit_split(p, n_cut));
        const auto ref = eq10_matrix(lx, 0.5 * lx, ratio, n_cut);
        return num::max_abs_diff(eff.H_eff, ref) / ref.max_abs();
    };
    const double e1 = err_at(0.2), e2 = err_at(0.1), e3 = err_at(0.05);
    CHECK(e2 < e1 / 1.4);
    CHECK(e3 < e2 / 1.4);
}

TEST_CASE("spectra are invariant under the exponentiated generator") {
    const auto p = one_qubit(0.2, 0.1, 100.0);
    const auto split = swt::one_qubit_split(p, 10);
    const auto gen = swt::sw_generator(split);
    const auto h = split.H0 + split.V;
    const auto rotated = num::expm(gen.S1) * h * num::expm(-1.0 * gen.S1);
    const auto e1 = num::eigh(h);
    const auto e2 = num::eigh(rotated);
    for (std::size_t i = 0; i < e1.eigenvalues.size(); ++i)
        CHECK(std::abs(e1.eigenvalues[i] - e2.eigenvalues[i]) <= 1e-9 * h.max_abs());
}

TEST_CASE("two-qubit effective gap against the closed form") {
    models::ModelParams p;
    p.n_qubits = 2;
    p.omega_q = 1e4;
    const double lx = 0.3, ly = 0.2;
    p.g_x = lx * std::sqrt(p.omega_q);
    p.g_y = ly * std::sqrt(p.omega_q);
    p.D_x = p.g_x * p.g_x;
    p.D_y = p.g_y * p.g_y;
    p.resonator_prefactor = 3;
    p.qubit_prefactor = 2;
    const auto eff = swt::sw_effective(swt::two_qubit_split(p, 24));
    const auto e = num::eigh(eff.H_eff);
    const double gap = e.eigenvalues[1] - e.eigenvalues[0];
    const double predicted = effective::two_qubit_gap(lx, ly).value;
    CHECK(std::abs(gap - predicted) / predicted <= 1e-2);
}

TEST_CASE("collective generator matches the a/b closed forms at zero boson frequency") {
    models::ModelParams p;
    p.omega_r = 0.0; // the omega_q/omega_r -> infinity limit, realized exactly
    p.omega_q = 1.0;
    p.n_qubits = 3;
    p.g_x = p.g_y = 0.2;
    p.D_x = p.D_y = 0.6;
    p.resonator_prefactor = 3;
    p.qubit_prefactor = 2;
    const double j = 1.5;
    const std::size_t nb = 8, sdim = 4;
    const auto gen = swt::sw_generator(swt::collective_split(p, j, -1.5, nb));
    auto idx = [&](std::size_t n, double m) {
        return n * sdim + std::size_t(std::lround(m + j));
    };
    for (double mz : {-1.5, -0.5, 0.5}) {
        const double a_ref = p.g_x * std::sqrt(j * (j + 1.0) - mz * (mz + 1.0)) /
                             (-2.0 * p.omega_q + p.D_x * (1.0 + 2.0 * mz));
        const double b_ref = p.g_x * std::sqrt(j * (j + 1.0) - mz * (mz - 1.0)) /
                             (2.0 * p.omega_q + p.D_x * (1.0 - 2.0 * mz));
        for (std::size_t n = 1; n + 1 < nb; ++n) {
            CHECK(std::abs(gen.S1(idx(n - 1, mz + 1.0), idx(n, mz)) -
                           cx(a_ref * std::sqrt(double(n)))) <= 1e-10);
            if (mz > -j)
                CHECK(std::abs(gen.S1(idx(n + 1, mz - 1.0), idx(n, mz)) -
                               cx(b_ref * std::sqrt(double(n + 1)))) <= 1e-10);
        }
    }
}

TEST_CASE("near-degenerate coupled pairs are rejected by name") {
    ComplexMatrix h0(3, 3);
    h0(0, 0) = 0.0;
    h0(1, 1) = 1.0;
    h0(2, 2) = 1.0 + 1e-12; // degenerate with level 1
    ComplexMatrix v(3, 3);
    v(0, 1) = 0.1;
    v(1, 0) = 0.1;
    v(1, 2) = 0.2; // couples the degenerate pair
    v(2, 1) = 0.2;
    ComplexMatrix low(3, 1);
    low(0, 0) = 1.0;
    try {
        swt::sw_generator(swt::make_block_split(h0, v, low));
        FAIL("expected degenerate_pair error");
    } catch (const Error& err) {
        CHECK(err.code() == "degenerate_pair");
        CHECK(err.kind() == ErrorKind::Numerical);
        CHECK(err.message().find("levels") != std::string::npos);
    }
}

TEST_CASE("block split validation") {
    ComplexMatrix h0(2, 2);
    h0(0, 0) = 1.0;
    h0(0, 1) = 0.5; // couples low and high inside H0
    h0(1, 0) = 0.5;
    h0(1, 1) = 2.0;
    ComplexMatrix low(2, 1);
    low(0, 0) = 1.0;
    CHECK_THROWS_AS(swt::make_block_split(h0, ComplexMatrix(2, 2), low), Error);

    ComplexMatrix diag(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = 2.0;
    ComplexMatrix vbad(2, 2);
    vbad(0, 0) = 0.3; // P V P != 0
    CHECK_THROWS_AS(swt::make_block_split(diag, vbad, low), Error);

    ComplexMatrix not_iso(2, 1);
    not_iso(0, 0) = 2.0;
    CHECK_THROWS_AS(swt::make_block_split(diag, ComplexMatrix(2, 2), not_iso), Error);
}
