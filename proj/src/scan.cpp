// scan.cpp — spectra, grids and transition detection

#include "qptsim/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "qptsim/operators.hpp"

namespace qptsim::scan {

namespace {
constexpr const char* kModule = "scan";
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct BlockResult {
    num::EigDecomposition eig;
    std::size_t n_cut = 0;
    double j = -1.0; // collective block, if any
};

num::ComplexMatrix build(const ModelParams& p, ModelKind kind, double j, std::size_t n_cut,
                         const FrameSpec& frame) {
    switch (kind) {
        case ModelKind::OneQubit: return models::build_one_qubit(p, n_cut, frame);
        case ModelKind::MultiQubit: return models::build_multi_qubit(p, n_cut, frame);
        case ModelKind::Collective: return models::build_collective_block(p, j, n_cut, frame);
    }
    fail_validation(kModule, "invalid_model", "unknown model kind");
}

// Doubling policy: accept once the tracked lowest eigenvalues move by less
// than tol * omega_r between n_cut and 2 n_cut. Each tracked level is paired
// with its nearest continuation in the doubled spectrum rather than by index:
// in a displaced frame the mirror well at -2 alpha feeds new levels into the
// low spectrum as the basis grows, and index pairing would chase them until
// the far well is fully resolved. The ground level itself must also hold
// still so a genuinely new lower state restarts the doubling.
BlockResult converged_eig(const ModelParams& p, ModelKind kind, double j, const FrameSpec& frame,
                          const SpectrumOptions& opt) {
    BlockResult out;
    out.j = j;
    std::size_t n_cut = std::max<std::size_t>(2, opt.initial_n_cut);
    auto prev = num::eigh(build(p, kind, j, n_cut, frame));
    if (!opt.auto_cutoff) {
        out.eig = std::move(prev);
        out.n_cut = n_cut;
        return out;
    }
    while (true) {
        const std::size_t next = 2 * n_cut;
        if (next > opt.max_n_cut)
            fail_numerical(kModule, "cutoff_no_convergence",
                           "spectrum did not converge by n_cut = " +
                               std::to_string(opt.max_n_cut));
        auto cur = num::eigh(build(p, kind, j, next, frame));
        const std::size_t k = std::min(opt.track, prev.eigenvalues.size());
        double shift = std::abs(cur.eigenvalues[0] - prev.eigenvalues[0]);
        for (std::size_t i = 0; i < k; ++i) {
            const double target = prev.eigenvalues[i];
            const auto it = std::lower_bound(cur.eigenvalues.begin(), cur.eigenvalues.end(),
                                             target);
            double nearest = std::numeric_limits<double>::infinity();
            if (it != cur.eigenvalues.end()) nearest = std::min(nearest, std::abs(*it - target));
            if (it != cur.eigenvalues.begin())
                nearest = std::min(nearest, std::abs(*(it - 1) - target));
            shift = std::max(shift, nearest);
        }
        prev = std::move(cur);
        n_cut = next;
        if (shift < opt.tol * p.omega_r) break;
    }
    out.eig = std::move(prev);
    out.n_cut = n_cut;
    return out;
}

// <v| M (x) I |v> for a boson-factor operator, or I (x) M, over the product
// space with spin dimension sdim.
double boson_expectation(const num::ComplexMatrix& vecs, std::size_t col,
                         const num::ComplexMatrix& m, std::size_t sdim) {
    const std::size_t n_cut = m.rows();
    num::cx acc = 0.0;
    for (std::size_t a = 0; a < n_cut; ++a)
        for (std::size_t b = 0; b < n_cut; ++b) {
            if (m(a, b) == num::cx(0.0)) continue;
            for (std::size_t s = 0; s < sdim; ++s)
                acc += std::conj(vecs(a * sdim + s, col)) * m(a, b) * vecs(b * sdim + s, col);
        }
    return std::real(acc);
}

double diag_expectation(const num::ComplexMatrix& vecs, std::size_t col,
                        const num::ComplexMatrix& d) {
    num::cx acc = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i)
        acc += std::conj(vecs(i, col)) * d(i, i) * vecs(i, col);
    return std::real(acc);
}

struct Observables {
    double n_photon = 0.0;
    double parity = 0.0;
    double excitation = 0.0;
};

Observables ground_observables(const BlockResult& block, const ModelParams& p, ModelKind kind,
                               const FrameSpec& frame, std::size_t col) {
    Observables obs;
    const std::size_t n_cut = block.n_cut;
    const std::size_t sdim =
        (kind == ModelKind::Collective)
            ? static_cast<std::size_t>(std::lround(2.0 * block.j)) + 1
            : (std::size_t{1} << static_cast<std::size_t>(p.n_qubits));

    // Lab-frame boson number (b_lab = b_frame + alpha).
    const auto f = ops::fock(n_cut);
    num::ComplexMatrix b = f.a;
    for (std::size_t m = 0; m < n_cut; ++m) b(m, m) += frame.alpha;
    const num::ComplexMatrix n_lab = b.adjoint() * b;
    obs.n_photon = boson_expectation(block.eig.eigenvectors, col, n_lab, sdim);

    const auto sym = (kind == ModelKind::Collective)
                         ? ops::block_symmetry_ops(n_cut, static_cast<std::size_t>(p.n_qubits),
                                                   block.j)
                         : ops::symmetry_ops(n_cut, static_cast<std::size_t>(p.n_qubits));

    if (frame.alpha == num::cx(0.0)) {
        obs.parity = diag_expectation(block.eig.eigenvectors, col, sym.parity);
        obs.excitation = diag_expectation(block.eig.eigenvectors, col, sym.excitation);
    } else {
        // Lab operators expressed in the displaced frame: exponentiate the
        // displaced number operator through its eigenbasis.
        const auto ne = num::eigh(n_lab);
        num::ComplexMatrix pb(n_cut, n_cut);
        for (std::size_t k = 0; k < n_cut; ++k) {
            const num::cx ph = std::exp(num::cx(0.0, std::numbers::pi * ne.eigenvalues[k]));
            for (std::size_t a = 0; a < n_cut; ++a)
                for (std::size_t c = 0; c < n_cut; ++c)
                    pb(a, c) += ne.eigenvectors(a, k) * ph * std::conj(ne.eigenvectors(c, k));
        }
        // Spin parts are frame independent and diagonal.
        num::cx par = 0.0;
        num::cx exc = 0.0;
        const auto& v = block.eig.eigenvectors;
        for (std::size_t a = 0; a < n_cut; ++a)
            for (std::size_t c = 0; c < n_cut; ++c)
                for (std::size_t s = 0; s < sdim; ++s) {
                    const num::cx amp = std::conj(v(a * sdim + s, col)) * v(c * sdim + s, col);
                    const double spin_exc =
                        std::real(sym.excitation(a * sdim + s, a * sdim + s)) -
                        static_cast<double>(a);
                    const double spin_par = (std::lround(spin_exc) % 2 == 0) ? 1.0 : -1.0;
                    par += amp * pb(a, c) * spin_par;
                    exc += amp * (n_lab(a, c) + (a == c ? num::cx(spin_exc) : num::cx(0.0)));
                }
        obs.parity = std::real(par);
        obs.excitation = std::real(exc);
    }
    return obs;
}

std::vector<double> allowed_blocks(int n_qubits) {
    std::vector<double> js;
    double j = (n_qubits % 2 == 0) ? 0.0 : 0.5;
    for (; j <= 0.5 * n_qubits + 1e-9; j += 1.0) js.push_back(j);
    return js;
}

} // namespace

SpectrumResult spectrum(const ModelParams& p, ModelKind kind, double j, const FrameSpec& frame,
                        const SpectrumOptions& opt) {
    std::vector<BlockResult> blocks;
    if (kind == ModelKind::Collective && j < 0.0) {
        for (double jb : allowed_blocks(p.n_qubits))
            blocks.push_back(converged_eig(p, kind, jb, frame, opt));
    } else {
        blocks.push_back(converged_eig(p, kind, j, frame, opt));
    }

    // Global ground state across blocks; merged spectrum for the level list.
    std::size_t best = 0;
    for (std::size_t i = 1; i < blocks.size(); ++i)
        if (blocks[i].eig.eigenvalues[0] < blocks[best].eig.eigenvalues[0]) best = i;

    SpectrumResult r;
    for (const auto& b : blocks)
        r.eigenvalues.insert(r.eigenvalues.end(), b.eig.eigenvalues.begin(),
                             b.eig.eigenvalues.end());
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
    r.ground_energy = r.eigenvalues[0];
    r.eigenvalues_referenced.reserve(r.eigenvalues.size());
    for (double e : r.eigenvalues) r.eigenvalues_referenced.push_back(e - r.ground_energy);
    r.gap = r.eigenvalues.size() > 1 ? r.eigenvalues[1] - r.eigenvalues[0] : 0.0;
    r.cutoff_used = blocks[best].n_cut;
    r.converged = true;

    const auto obs = ground_observables(blocks[best], p, kind, frame, 0);
    r.n_photon = obs.n_photon;
    r.parity = obs.parity;
    r.excitation = obs.excitation;
    return r;
}

namespace {

GridRow evaluate_point(const GridSpec& spec, double lx, double ly) {
    GridRow row;
    const double omega_r = 1.0;
    const double omega_q = spec.ratio;
    const double scale = std::sqrt(omega_r * omega_q);
    row.lambda_x = lx;
    row.lambda_y = ly;
    row.g_x = lx * scale;
    row.g_y = ly * scale;

    ModelParams p;
    p.omega_r = omega_r;
    p.omega_q = omega_q;
    p.g_x = row.g_x;
    p.g_y = row.g_y;
    p.n_qubits = spec.n_qubits;
    p.sign_x = spec.sign_x;
    p.sign_y = spec.sign_y;
    p.resonator_prefactor = spec.resonator_prefactor;
    p.qubit_prefactor = spec.qubit_prefactor;
    if (spec.model != ModelKind::OneQubit) {
        p.D_x = row.g_x * row.g_x / omega_r;
        p.D_y = row.g_y * row.g_y / omega_r;
    }

    const auto c = effective::couplings(omega_r, omega_q, p.g_x, p.g_y);
    FrameSpec frame;
    switch (spec.model) {
        case ModelKind::OneQubit: {
            row.analytic_phase = effective::classify_phase(c);
            if (row.analytic_phase == effective::PhaseLabel::Normal ||
                row.analytic_phase == effective::PhaseLabel::Critical) {
                const auto bog = effective::bogoliubov(effective::normal_effective(c));
                row.analytic_gap = bog.stable ? bog.epsilon : kNaN;
            } else {
                const auto fr = effective::superradiant_frame(c);
                row.analytic_gap = fr.epsilon_tilde;
                // Displace only the Z2-broken branches; U(1) eigenstates are
                // excitation-number states and gain nothing from a coherent seed.
                if (spec.displaced_frame && fr.branch != effective::PhaseLabel::U1Line)
                    frame.alpha = fr.alpha;
            }
            break;
        }
        case ModelKind::MultiQubit: {
            const auto gap = effective::two_qubit_gap(lx, ly);
            row.analytic_gap = gap.value;
            row.analytic_phase = effective::PhaseLabel::Normal; // transition inhibited
            break;
        }
        case ModelKind::Collective: {
            const auto gap = effective::n_qubit_gap(lx, spec.n_qubits);
            row.analytic_gap = gap.value;
            row.analytic_phase = gap.boundary ? effective::PhaseLabel::Critical
                                 : gap.stable ? effective::PhaseLabel::Normal
                                              : effective::PhaseLabel::U1Line;
            break;
        }
    }

    SpectrumOptions opt;
    opt.initial_n_cut = spec.initial_n_cut;
    try {
        const auto s = spectrum(p, spec.model, spec.j, frame, opt);
        row.ground_energy = s.ground_energy;
        row.gap = s.gap;
        row.n_photon = s.n_photon;
        row.parity = s.parity;
    } catch (const Error& err) {
        row.error = err.module_name() + ":" + err.code();
        row.ground_energy = kNaN;
        row.gap = kNaN;
        row.n_photon = kNaN;
        row.parity = kNaN;
    }
    return row;
}

} // namespace

std::vector<GridRow> scan_grid(const GridSpec& spec, unsigned threads) {
    if (spec.nx < 1 || spec.ny < 1)
        fail_validation(kModule, "invalid_grid", "grid needs at least one point per axis");
    if (!std::isfinite(spec.lambda_x_min) || !std::isfinite(spec.lambda_x_max) ||
        !std::isfinite(spec.lambda_y_min) || !std::isfinite(spec.lambda_y_max))
        fail_validation(kModule, "invalid_grid", "grid ranges must be finite");
    if (spec.model == ModelKind::Collective && spec.ny != 1)
        fail_validation(kModule, "invalid_grid",
                        "collective scans are one-dimensional in lambda (set ny = 1)");

    const std::size_t total = spec.nx * spec.ny;
    std::vector<GridRow> rows(total);
    auto coord = [](double lo, double hi, std::size_t n, std::size_t i) {
        return n > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1) : lo;
    };
    auto work = [&](std::size_t flat) {
        const std::size_t ix = flat / spec.ny;
        const std::size_t iy = flat % spec.ny;
        const double lx = coord(spec.lambda_x_min, spec.lambda_x_max, spec.nx, ix);
        const double ly = (spec.model == ModelKind::Collective)
                              ? lx
                              : coord(spec.lambda_y_min, spec.lambda_y_max, spec.ny, iy);
        rows[flat] = evaluate_point(spec, lx, ly);
    };

    unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(total));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

TransitionReport detect_transitions(const std::vector<GridRow>& rows, Axis axis) {
    TransitionReport report;
    report.axis = axis;
    const std::size_t n = rows.size();
    if (n < 5)
        fail_validation(kModule, "too_few_points",
                        "detect_transitions needs at least 5 collinear points");

    std::vector<double> x(n), e(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = axis == Axis::GX ? rows[i].g_x : rows[i].g_y;
        e[i] = rows[i].ground_energy;
    }
    const double h = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
    if (!(std::abs(h) > 0.0))
        fail_validation(kModule, "invalid_grid", "axis coordinate does not vary");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs((x[i + 1] - x[i]) - h) > 1e-6 * std::abs(h))
            fail_validation(kModule, "invalid_grid", "axis spacing is not uniform");

    std::vector<double> slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (e[i + 1] - e[i]) / h;
    std::vector<double> d2(n); // centered second difference, defined on 1..n-2
    for (std::size_t i = 1; i + 1 < n; ++i)
        d2[i] = num::second_derivative(e[i - 1], e[i], e[i + 1], std::abs(h));

    // Boundary score: change of the second derivative between neighbors.
    std::vector<double> jump(n, 0.0); // defined on 1..n-3
    std::vector<double> sorted;
    for (std::size_t i = 1; i + 2 < n; ++i) {
        jump[i] = std::abs(d2[i + 1] - d2[i]);
        sorted.push_back(jump[i]);
    }
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    const double median = quantile(0.5);
    const double iqr = quantile(0.75) - quantile(0.25);
    double threshold = median + 5.0 * iqr;
    // Guard against perfectly flat series where median and IQR both vanish.
    double d2max = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) d2max = std::max(d2max, std::abs(d2[i]));
    threshold = std::max(threshold, 1e-10 * std::max(d2max, 1.0));

    // Slope-variation background for the order classification.
    std::vector<double> ds;
    for (std::size_t i = 0; i + 1 < slope.size(); ++i) ds.push_back(std::abs(slope[i + 1] - slope[i]));
    std::vector<double> ds_sorted = ds;
    std::sort(ds_sorted.begin(), ds_sorted.end());
    double slope_lo = 0.0, slope_hi = 0.0;
    for (double s : slope) {
        slope_lo = std::min(slope_lo, s);
        slope_hi = std::max(slope_hi, s);
    }
    const double ds_background =
        std::max(ds_sorted.empty() ? 0.0 : ds_sorted[ds_sorted.size() / 2],
                 (slope_hi - slope_lo) / static_cast<double>(n - 1));

    // Flag local maxima of the score above threshold, one point per run.
    std::size_t i = 1;
    while (i + 2 < n) {
        if (jump[i] > threshold) {
            std::size_t peak = i;
            std::size_t k = i;
            while (k + 2 < n && jump[k] > threshold) {
                if (jump[k] > jump[peak]) peak = k;
                ++k;
            }
            TransitionPoint pt;
            pt.index = peak + 1; // the kink sits between d2[peak] and d2[peak+1]
            pt.axis_value = x[pt.index];
            pt.score = jump[peak];
            const std::size_t lo = peak > 0 ? peak - 1 : 0;
            const std::size_t hi = std::min(peak + 2, slope.size() - 1);
            double local = 0.0;
            for (std::size_t w = lo; w + 1 <= hi; ++w)
                local = std::max(local, std::abs(slope[w + 1] - slope[w]));
            pt.order = (local > 10.0 * std::max(ds_background, 1e-300)) ? 1 : 2;
            report.points.push_back(pt);
            i = k;
        } else {
            ++i;
        }
    }
    return report;
}

std::string shortest_repr(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string to_csv(const std::vector<GridRow>& rows) {
    std::string out =
        "gx,gy,lambda_x,lambda_y,ground_energy,gap,n_G,parity,analytic_phase,analytic_gap\n";
    for (const auto& r : rows) {
        out += shortest_repr(r.g_x) + ',' + shortest_repr(r.g_y) + ',' +
               shortest_repr(r.lambda_x) + ',' + shortest_repr(r.lambda_y) + ',' +
               shortest_repr(r.ground_energy) + ',' + shortest_repr(r.gap) + ',' +
               shortest_repr(r.n_photon) + ',' + shortest_repr(r.parity) + ',' +
               effective::phase_name(r.analytic_phase) + ',' + shortest_repr(r.analytic_gap);
        out += '\n';
    }
    return out;
}

} // namespace qptsim::scan
