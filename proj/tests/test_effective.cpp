// test_effective.cpp — closed-form effective theory against frozen values
// and brute-force oracles

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qptsim/effective.hpp"
#include "qptsim/numerics.hpp"
#include "qptsim/operators.hpp"

using namespace qptsim;
using effective::PhaseLabel;

namespace {
effective::Couplings make(double lx, double ly, double ratio = 50.0) {
    return effective::couplings(1.0, ratio, lx * std::sqrt(ratio), ly * std::sqrt(ratio));
}
} // namespace

TEST_CASE("couplings arithmetic and scaling invariance") {
    const auto c = effective::couplings(1.0, 100.0, 5.0, 0.0);
    CHECK(c.lambda_x == doctest::Approx(0.5));
    CHECK(c.lambda_y == 0.0);
    CHECK(c.ratio == doctest::Approx(100.0));

    const double s = 3.7;
    const auto scaled = effective::couplings(s, 100.0 * s, 5.0 * s, 0.0);
    CHECK(scaled.lambda_x == doctest::Approx(c.lambda_x).epsilon(1e-14));
    CHECK_THROWS_AS(effective::couplings(0.0, 1.0, 0.0, 0.0), Error);
}

TEST_CASE("normal_effective coefficients") {
    const auto q0 = effective::normal_effective(make(0.0, 0.0));
    CHECK(q0.A == doctest::Approx(1.0));
    CHECK(q0.B == doctest::Approx(0.0));

    const auto q1 = effective::normal_effective(make(1.0, 1.0));
    CHECK(q1.A == doctest::Approx(0.0));
    CHECK(q1.B == doctest::Approx(0.0));

    const auto q = effective::normal_effective(make(0.6, 0.0));
    CHECK(q.A == doctest::Approx(0.82).epsilon(1e-12));
    CHECK(q.B == doctest::Approx(-0.09).epsilon(1e-12));
    CHECK(q.C0 == doctest::Approx(-0.09 - 25.0).epsilon(1e-12));
}

TEST_CASE("bogoliubov spectrum and squeezing") {
    effective::QuadraticBosonForm free;
    free.A = 1.0;
    free.B = 0.0;
    const auto b0 = effective::bogoliubov(free);
    CHECK(b0.epsilon == doctest::Approx(1.0));
    CHECK(b0.r == doctest::Approx(0.0));
    CHECK(b0.eta == 1);
    CHECK(b0.stable);

    const auto b = effective::bogoliubov(effective::normal_effective(make(0.6, 0.0)));
    CHECK(b.epsilon == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(b.r == doctest::Approx(0.111571775657105).epsilon(1e-12)); // ln(1/0.64)/4
    // Cross-check epsilon^2 = (1-lx^2)(1-ly^2).
    CHECK(b.epsilon * b.epsilon == doctest::Approx(0.64).epsilon(1e-12));

    const auto unstable = effective::bogoliubov(effective::normal_effective(make(1.2, 0.5)));
    CHECK_FALSE(unstable.stable);

    // lambda_x^2 + lambda_y^2 > 2 with a real epsilon: eta = -1.
    const auto neg = effective::bogoliubov(effective::normal_effective(make(1.3, 1.2)));
    CHECK(neg.stable);
    CHECK(neg.eta == -1);
    CHECK(neg.epsilon < 0.0);

    // A = +-2B leaves the squeeze parameter undefined.
    effective::QuadraticBosonForm edge;
    edge.A = 1.0;
    edge.B = 0.5;
    const auto crit = effective::bogoliubov(edge);
    CHECK(crit.critical);
    CHECK(std::isnan(crit.r));
    CHECK(crit.epsilon == doctest::Approx(0.0));
}

TEST_CASE("epsilon identity over the coupling grid") {
    for (int i = 0; i < 50; ++i)
        for (int k = 0; k < 50; ++k) {
            const double lx = 2.0 * i / 49.0, ly = 2.0 * k / 49.0;
            const auto b = effective::bogoliubov(effective::normal_effective(make(lx, ly)));
            const double target = (1.0 - lx * lx) * (1.0 - ly * ly);
            if (target < 0.0) {
                CHECK_FALSE(b.stable);
            } else {
                REQUIRE(b.stable);
                CHECK(std::abs(b.epsilon * b.epsilon - target) <= 1e-12);
            }
        }
}

TEST_CASE("phase classification") {
    CHECK(effective::classify_phase(make(0.5, 0.5)) == PhaseLabel::Normal);
    CHECK(effective::classify_phase(make(1.5, 0.2)) == PhaseLabel::SuperradiantX);
    CHECK(effective::classify_phase(make(0.2, 1.5)) == PhaseLabel::SuperradiantY);
    CHECK(effective::classify_phase(make(1.3, 1.3)) == PhaseLabel::U1Line);
    CHECK(effective::classify_phase(make(1.0, 0.3)) == PhaseLabel::Critical);
    CHECK(effective::classify_phase(make(0.2, 1.0)) == PhaseLabel::Critical);
}

TEST_CASE("superradiant frame") {
    const auto f = effective::superradiant_frame(make(1.2, 0.0));
    CHECK(f.alpha_sq == doctest::Approx(9.319444444444445).epsilon(1e-12));
    CHECK(std::imag(f.alpha) == 0.0);
    CHECK(f.branch == PhaseLabel::SuperradiantX);
    CHECK(f.omega_q_tilde == doctest::Approx(50.0 * 1.44).epsilon(1e-12));
    CHECK(f.lambda_x_tilde == doctest::Approx(1.0 / 1.44).epsilon(1e-12));
    CHECK(f.lambda_y_tilde == 0.0);

    // Goldstone line: epsilon_tilde is exactly zero.
    const auto u1 = effective::superradiant_frame(make(1.3, 1.3));
    CHECK(u1.branch == PhaseLabel::U1Line);
    CHECK(u1.epsilon_tilde == 0.0);
    CHECK(u1.theta == 0.0);

    // Continuity at the critical point.
    const auto near = effective::superradiant_frame(make(1.0 + 1e-8, 0.0));
    CHECK(near.alpha_sq <= 1e-6);

    // Y branch carries an imaginary displacement.
    const auto fy = effective::superradiant_frame(make(0.0, 1.2));
    CHECK(std::real(fy.alpha) == 0.0);
    CHECK(std::imag(fy.alpha) > 0.0);

    CHECK_THROWS_AS(effective::superradiant_frame(make(0.9, 0.9)), Error);
}

TEST_CASE("mirror symmetry between the X and Y branches") {
    const auto fx = effective::superradiant_frame(make(1.7, 0.4));
    const auto fy = effective::superradiant_frame(make(0.4, 1.7));
    CHECK(fx.epsilon_tilde == doctest::Approx(fy.epsilon_tilde).epsilon(1e-14));
    CHECK(fx.alpha_sq == doctest::Approx(fy.alpha_sq).epsilon(1e-14));
    CHECK(std::abs(fx.alpha) == doctest::Approx(std::abs(fy.alpha)).epsilon(1e-14));
}

TEST_CASE("ground state branches") {
    const auto normal = effective::ground_state(make(0.5, 0.5));
    CHECK(normal.energy == doctest::Approx(-25.0));
    CHECK(normal.n_photon == 0.0);

    // Both branch formulas agree with -omega_q/2 at the boundary.
    const auto edge = effective::ground_state(make(1.0, 0.0));
    CHECK(edge.energy == doctest::Approx(-25.0).epsilon(1e-12));

    // lambda_x = sqrt(2), omega_q = 1 (ratio 1): -(1/4)(2 + 1/2).
    const auto c = effective::couplings(1.0, 1.0, std::sqrt(2.0), 0.0);
    CHECK(effective::ground_state(c).energy == doctest::Approx(-0.625).epsilon(1e-12));

    // Continuity across the boundary.
    const auto below = effective::ground_state(make(1.0 - 1e-13, 0.0));
    const auto above = effective::ground_state(make(1.0 + 1e-13, 0.0));
    CHECK(std::abs(below.energy - above.energy) <= 1e-10);
}

TEST_CASE("two-qubit levels: closed form against the 4x4 oracle") {
    const auto zero = effective::two_qubit_levels(0.0, 0.0);
    CHECK(zero.Lambda_1 == doctest::Approx(2.0));
    CHECK(zero.Lambda_2 == doctest::Approx(2.0));
    CHECK(zero.xi_1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(zero.xi_2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    const auto big = effective::two_qubit_levels(2.0, 2.0);
    CHECK(big.Lambda_1 == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(big.Lambda_2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(big.regime == effective::TwoQubitRegime::LargeX);

    // {0, L1, L2, L1+L2} equals the ground-referenced spectrum of
    // 2 S_z + lx^2 Sx^2 + ly^2 Sy^2 (omega_q' = 1).
    const auto s2 = ops::spins(2);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double lx = u(rng), ly = u(rng);
        const auto lv = effective::two_qubit_levels(lx, ly);
        double expected[4] = {0.0, lv.Lambda_1, lv.Lambda_2, lv.Lambda_1 + lv.Lambda_2};
        std::sort(expected, expected + 4);
        num::ComplexMatrix h = 2.0 * s2.Sz;
        h += (lx * lx) * (s2.Sx * s2.Sx);
        h += (ly * ly) * (s2.Sy * s2.Sy);
        const auto e = num::eigh(h);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs((e.eigenvalues[i] - e.eigenvalues[0]) - expected[i]) <= 1e-10);
    }

    // Boundary flag at lx^2 ly^2 = 4.
    CHECK(effective::two_qubit_levels(std::sqrt(2.0), std::sqrt(2.0)).regime ==
          effective::TwoQubitRegime::Boundary);
    CHECK_THROWS_AS(effective::two_qubit_levels(-0.1, 0.0), Error);
}

TEST_CASE("two-qubit coefficient tables select xi by regime") {
    const auto sx = effective::two_qubit_levels(1.0, 0.5);
    CHECK(sx.regime == effective::TwoQubitRegime::SmallX);
    CHECK(sx.b_x[0] == doctest::Approx(sx.xi_1));
    CHECK(sx.b_x[1] == doctest::Approx(-sx.xi_1));
    CHECK(sx.b_y[2] == doctest::Approx(sx.xi_1));
    CHECK(sx.b_x[2] == doctest::Approx(sx.xi_2));

    const auto sy = effective::two_qubit_levels(0.5, 1.0);
    CHECK(sy.regime == effective::TwoQubitRegime::SmallY);
    CHECK(sy.b_x[0] == doctest::Approx(-sy.xi_2));
    CHECK(sy.b_y[0] == doctest::Approx(-sy.xi_1));

    const auto ly_ = effective::two_qubit_levels(1.2, 2.5);
    CHECK(ly_.regime == effective::TwoQubitRegime::LargeY);
    CHECK(ly_.b_x[0] == 0.0);
    CHECK(ly_.b_y[0] == 0.0);
}

TEST_CASE("two-qubit gap") {
    CHECK(effective::two_qubit_gap(0.0, 0.0).value == doctest::Approx(3.0));
    // (1, 0): w = sqrt(17), Lambda_1 = 2.56155, xi_1^2 = 1.51493.
    const auto g = effective::two_qubit_gap(1.0, 0.0);
    CHECK(g.value == doctest::Approx(2.68808).epsilon(1e-5));
    CHECK(g.formula_branch == "small_x");
    const auto big = effective::two_qubit_gap(2.5, 2.5);
    CHECK(big.value == doctest::Approx(3.0));
    CHECK(big.formula_branch == "large");

    // Positive over the grid away from branch boundaries.
    for (int i = 0; i < 40; ++i)
        for (int k = 0; k < 40; ++k) {
            const double lx = 3.0 * i / 39.0, ly = 3.0 * k / 39.0;
            if (std::abs(lx * ly - 2.0) < 0.05) continue;
            const auto gg = effective::two_qubit_gap(lx, ly);
            CHECK(gg.stable);
            CHECK(gg.value > 0.0);
        }
}

TEST_CASE("n-qubit gap branches") {
    CHECK(std::abs(effective::n_qubit_gap(std::sqrt(6.0), 3).value) <= 1e-12);
    CHECK(effective::n_qubit_gap(std::sqrt(10.0), 2).value == 3.0);
    CHECK(effective::n_qubit_gap(1.0, 4).value == doctest::Approx(2.2).epsilon(1e-14));
    CHECK(effective::n_qubit_gap(std::sqrt(2.0), 5).boundary);
    // Continuity at the crossing: both reachable branches give 2 Omega_r.
    for (int n : {1, 2, 3, 4, 5}) {
        CHECK(effective::n_qubit_gap(std::sqrt(2.0) * (1 - 1e-9), n).value ==
              doctest::Approx(2.0).epsilon(1e-7));
        if (n % 2 == 1)
            CHECK(effective::n_qubit_gap(std::sqrt(2.0) * (1 + 1e-9), n).value ==
                  doctest::Approx(2.0).epsilon(1e-7));
    }
    // Odd N condenses past sqrt(6).
    const auto deep = effective::n_qubit_gap(2.6, 3);
    CHECK_FALSE(deep.stable);
    CHECK_THROWS_AS(effective::n_qubit_gap(1.0, 0), Error);
}

TEST_CASE("qubit ground label") {
    const auto a = effective::qubit_ground_label(4, 1.0, 1.0);
    CHECK(a.j == doctest::Approx(2.0));
    CHECK(a.m_z == doctest::Approx(-2.0));
    const auto b = effective::qubit_ground_label(4, 3.0, 1.0);
    CHECK(b.j == 0.0);
    CHECK(b.m_z == 0.0);
    const auto c = effective::qubit_ground_label(3, 3.0, 1.0);
    CHECK(c.j == doctest::Approx(0.5));
    CHECK(c.m_z == doctest::Approx(-0.5));
    CHECK(effective::qubit_ground_label(3, 2.0, 1.0).degenerate);

    // Brute force over blocks for N <= 8.
    for (int n = 1; n <= 8; ++n)
        for (double dr : {0.5, 1.9, 2.1, 5.0}) {
            const auto label = effective::qubit_ground_label(n, dr, 1.0);
            double best = 1e300, bj = -1, bm = 0;
            double j = (n % 2 == 0) ? 0.0 : 0.5;
            for (; j <= 0.5 * n + 1e-9; j += 1.0)
                for (double m = -j; m <= j + 1e-9; m += 1.0) {
                    const double ev = 2.0 * m + dr * (j * (j + 1.0) - m * m);
                    if (ev < best - 1e-12) {
                        best = ev;
                        bj = j;
                        bm = m;
                    }
                }
            CHECK(label.j == doctest::Approx(bj));
            CHECK(label.m_z == doctest::Approx(bm));
        }
}

TEST_CASE("first-order kink across the U(1) line") {
    const double l = 1.4, dl = 1e-6, R = 50.0;
    auto eg = [&](double lx, double ly) { return effective::ground_state(make(lx, ly, R)).energy; };
    const double slope_x = (eg(l + dl, l - dl) - eg(l, l)) / dl;
    const double slope_y = (eg(l - dl, l + dl) - eg(l, l)) / dl;
    // Symmetric kink, magnitude (omega_q/2)(l - 1/l^3) per side.
    const double expected = 0.5 * R * (l - 1.0 / (l * l * l));
    CHECK(std::abs(slope_x) == doctest::Approx(expected).epsilon(1e-3));
    CHECK(std::abs(slope_y) == doctest::Approx(expected).epsilon(1e-3));
    CHECK(slope_x * slope_y > 0.0); // both directions climb: a genuine kink
}
