// test_scan.cpp — spectrum driver, grid scanner, transition detection, CSV

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qptsim/operators.hpp"
#include "qptsim/scan.hpp"

using namespace qptsim;

namespace {

models::ModelParams one_qubit(double lx, double ly, double ratio) {
    models::ModelParams p;
    p.omega_q = ratio;
    p.g_x = lx * std::sqrt(ratio);
    p.g_y = ly * std::sqrt(ratio);
    return p;
}

std::vector<scan::GridRow> analytic_rows(double lx0, double lx1, std::size_t n, double ly,
                                         double ratio) {
    std::vector<scan::GridRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = lx0 + (lx1 - lx0) * double(i) / double(n - 1);
        rows[i].lambda_x = lx;
        rows[i].lambda_y = ly;
        rows[i].g_x = lx * std::sqrt(ratio);
        rows[i].g_y = ly * std::sqrt(ratio);
        const auto c = effective::couplings(1.0, ratio, rows[i].g_x, rows[i].g_y);
        rows[i].ground_energy = effective::ground_state(c).energy;
    }
    return rows;
}

} // namespace

TEST_CASE("decoupled spectrum") {
    models::ModelParams p;
    p.omega_q = 5.0;
    const auto s = scan::spectrum(p, scan::ModelKind::OneQubit, -1.0, {});
    CHECK(s.ground_energy == doctest::Approx(-2.5));
    CHECK(s.n_photon == doctest::Approx(0.0));
    CHECK(s.gap == doctest::Approx(1.0)); // min(omega_r, omega_q) with R > 1
    CHECK(s.excitation == doctest::Approx(0.0));
    CHECK(s.parity == doctest::Approx(1.0));
    CHECK(s.converged);
    REQUIRE(s.eigenvalues_referenced.size() == s.eigenvalues.size());
    CHECK(s.eigenvalues_referenced[0] == 0.0);
    CHECK(s.eigenvalues_referenced[1] == doctest::Approx(s.gap));
}

TEST_CASE("superradiant order parameter in the displaced frame") {
    const auto p = one_qubit(1.5, 0.0, 50.0);
    const auto c = effective::couplings(p);
    models::FrameSpec frame;
    frame.alpha = effective::superradiant_frame(c).alpha;
    const auto s = scan::spectrum(p, scan::ModelKind::OneQubit, -1.0, frame);
    const double alpha_sq = 0.25 * 50.0 * (2.25 - 1.0 / 2.25);
    CHECK(std::abs(s.n_photon - alpha_sq) / alpha_sq <= 0.05);

    const auto s0 = scan::spectrum(one_qubit(0.9, 0.0, 50.0), scan::ModelKind::OneQubit, -1.0, {});
    CHECK(s0.n_photon < 0.5);
}

TEST_CASE("parity is a good quantum number in the normal phase") {
    const auto s = scan::spectrum(one_qubit(0.5, 0.3, 50.0), scan::ModelKind::OneQubit, -1.0, {});
    CHECK(std::abs(std::abs(s.parity) - 1.0) <= 1e-8);
}

TEST_CASE("two-qubit inhibition point") {
    models::ModelParams p;
    p.n_qubits = 2;
    p.omega_q = 50.0;
    p.g_x = p.g_y = 2.5 * std::sqrt(50.0);
    p.D_x = p.D_y = p.g_x * p.g_x;
    p.resonator_prefactor = 3;
    p.qubit_prefactor = 2;
    const auto s = scan::spectrum(p, scan::ModelKind::MultiQubit, -1.0, {});
    CHECK(s.n_photon < 5.0);
}

TEST_CASE("cutoff policy reports and can be exhausted") {
    const auto p = one_qubit(0.5, 0.2, 50.0);
    const auto s = scan::spectrum(p, scan::ModelKind::OneQubit, -1.0, {});
    CHECK(s.cutoff_used >= 32);
    CHECK(s.converged);

    scan::SpectrumOptions opt;
    opt.initial_n_cut = 2;
    opt.max_n_cut = 4;
    // Deep superradiant state cannot converge with four Fock levels.
    const auto deep = one_qubit(1.5, 0.0, 50.0);
    try {
        scan::spectrum(deep, scan::ModelKind::OneQubit, -1.0, {}, opt);
        FAIL("expected cutoff_no_convergence");
    } catch (const Error& err) {
        CHECK(err.code() == "cutoff_no_convergence");
        CHECK(err.kind() == ErrorKind::Numerical);
    }
}

TEST_CASE("3x3 one-qubit grid thresholds") {
    scan::GridSpec spec;
    spec.lambda_x_min = 0.0;
    spec.lambda_x_max = 1.5;
    spec.nx = 3;
    spec.lambda_y_min = 0.0;
    spec.lambda_y_max = 1.5;
    spec.ny = 3;
    spec.ratio = 50.0;
    const auto rows = scan::scan_grid(spec);
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) {
        REQUIRE(r.error.empty());
        if (std::max(r.lambda_x, r.lambda_y) < 1.0) CHECK(r.n_photon < 0.5);
        if (r.lambda_x == doctest::Approx(1.5) && r.lambda_y == 0.0) CHECK(r.n_photon > 10.0);
    }
    // Row-major determinism: first row is (0,0), second is (0, 0.75).
    CHECK(rows[0].lambda_x == 0.0);
    CHECK(rows[1].lambda_y == doctest::Approx(0.75));
}

TEST_CASE("per-row failures are marked without aborting the grid") {
    scan::GridSpec spec;
    spec.model = scan::ModelKind::Collective;
    spec.n_qubits = 3;
    spec.j = 2.0; // invalid block for three qubits
    spec.lambda_x_min = 0.1;
    spec.lambda_x_max = 0.5;
    spec.nx = 3;
    spec.ny = 1;
    spec.resonator_prefactor = 3;
    spec.qubit_prefactor = 2;
    const auto rows = scan::scan_grid(spec);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.error == "models:invalid_spin_number");
        CHECK(std::isnan(r.ground_energy));
    }
    const auto csv = scan::to_csv(rows);
    CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("single-point grid equals spectrum output") {
    scan::GridSpec spec;
    spec.lambda_x_min = spec.lambda_x_max = 0.5;
    spec.nx = 1;
    spec.lambda_y_min = spec.lambda_y_max = 0.0;
    spec.ny = 1;
    spec.ratio = 50.0;
    const auto rows = scan::scan_grid(spec);
    REQUIRE(rows.size() == 1);
    const auto s = scan::spectrum(one_qubit(0.5, 0.0, 50.0), scan::ModelKind::OneQubit, -1.0, {});
    CHECK(rows[0].ground_energy == doctest::Approx(s.ground_energy).epsilon(1e-12));
    CHECK(rows[0].n_photon == doctest::Approx(s.n_photon).epsilon(1e-9));
}

TEST_CASE("goldstone gap softens with increasing ratio") {
    double prev = 1e300;
    for (double ratio : {20.0, 50.0, 100.0}) {
        const auto s =
            scan::spectrum(one_qubit(1.3, 1.3, ratio), scan::ModelKind::OneQubit, -1.0, {});
        CHECK(s.gap < prev);
        prev = s.gap;
    }
}

TEST_CASE("collective scan crosses the sqrt(6) point for N = 3 only") {
    scan::GridSpec spec;
    spec.model = scan::ModelKind::Collective;
    spec.n_qubits = 3;
    spec.lambda_x_min = 2.2;
    spec.lambda_x_max = 2.7;
    spec.nx = 6;
    spec.ny = 1;
    spec.ratio = 50.0;
    spec.resonator_prefactor = 3;
    spec.qubit_prefactor = 2;
    const auto rows3 = scan::scan_grid(spec);
    REQUIRE(rows3.size() == 6);
    CHECK(rows3.back().n_photon > 10.0 * std::max(rows3.front().n_photon, 1e-6));

    spec.n_qubits = 2;
    const auto rows2 = scan::scan_grid(spec);
    CHECK(rows2.back().n_photon < 2.0 * std::max(rows2.front().n_photon, 1e-6));
}

TEST_CASE("transition detection on the analytic branches") {
    const auto line = analytic_rows(0.5, 1.5, 101, 0.0, 50.0);
    const auto rep = scan::detect_transitions(line, scan::Axis::GX);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].order == 2);
    CHECK(std::abs(line[rep.points[0].index].lambda_x - 1.0) <= 0.0101);

    // Constant rows produce an empty report.
    auto flat = analytic_rows(0.1, 0.6, 21, 0.0, 50.0);
    for (auto& r : flat) r.ground_energy = -25.0;
    CHECK(scan::detect_transitions(flat, scan::Axis::GX).points.empty());

    CHECK_THROWS_AS(scan::detect_transitions(analytic_rows(0.1, 0.4, 4, 0.0, 50.0),
                                             scan::Axis::GX),
                    Error);
}

TEST_CASE("first-order detection along a ray crossing the U(1) line") {
    const double ratio = 50.0;
    const std::size_t n = 101;
    std::vector<scan::GridRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = 1.05 + 0.5 * double(i) / double(n - 1);
        const double ly = 2.6 - lx;
        rows[i].lambda_x = lx;
        rows[i].lambda_y = ly;
        rows[i].g_x = lx * std::sqrt(ratio);
        rows[i].g_y = ly * std::sqrt(ratio);
        const auto c = effective::couplings(1.0, ratio, rows[i].g_x, rows[i].g_y);
        rows[i].ground_energy = effective::ground_state(c).energy;
    }
    const auto rep = scan::detect_transitions(rows, scan::Axis::GX);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].order == 1);
    CHECK(std::abs(rows[rep.points[0].index].lambda_x - 1.3) <= 0.0051);
}

TEST_CASE("CSV format") {
    CHECK(scan::shortest_repr(0.5) == "0.5");
    CHECK(scan::shortest_repr(1.0 / 3.0) == "0.3333333333333333");
    CHECK(scan::shortest_repr(std::nan("")) == "nan");

    scan::GridSpec spec;
    spec.lambda_x_min = 0.0;
    spec.lambda_x_max = 0.5;
    spec.nx = 2;
    spec.ratio = 50.0;
    const auto rows = scan::scan_grid(spec);
    const auto csv = scan::to_csv(rows);
    CHECK(csv.rfind("gx,gy,lambda_x,lambda_y,ground_energy,gap,n_G,parity,analytic_phase,"
                    "analytic_gap\n",
                    0) == 0);
    // One data line per grid point.
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == rows.size() + 1);
    CHECK(csv.find("Normal") != std::string::npos);

    // Bit-identical output across repeated and threaded runs.
    CHECK(scan::to_csv(scan::scan_grid(spec, 1)) == scan::to_csv(scan::scan_grid(spec, 2)));
}

TEST_CASE("doublet photon numbers agree deep in the superradiant phase") {
    // Lab frame: the two lowest states are a parity doublet.
    const auto p = one_qubit(1.5, 0.0, 50.0);
    const std::size_t n_cut = 128;
    const auto e = num::eigh(models::build_one_qubit(p, n_cut));
    const auto f = ops::fock(n_cut);
    auto photon = [&](std::size_t col) {
        num::cx acc = 0.0;
        for (std::size_t a = 0; a < n_cut; ++a)
            for (std::size_t s = 0; s < 2; ++s)
                acc += std::conj(e.eigenvectors(a * 2 + s, col)) * std::real(f.n(a, a)) *
                       e.eigenvectors(a * 2 + s, col);
        return std::real(acc);
    };
    const double n0 = photon(0), n1 = photon(1);
    CHECK(std::abs(n0 - n1) / std::max(n0, 1.0) <= 0.01);
    // The doublet is nearly degenerate next to the well excitation.
    CHECK(e.eigenvalues[1] - e.eigenvalues[0] < 0.1 * (e.eigenvalues[2] - e.eigenvalues[1]));
}
