// effective.cpp — closed-form effective theories

#include "qptsim/effective.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qptsim::effective {

namespace {
constexpr const char* kModule = "effective";
const double kNaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

Couplings couplings(double omega_r, double omega_q, double g_x, double g_y) {
    if (!(omega_r > 0.0) || !(omega_q > 0.0))
        fail_validation(kModule, "invalid_params", "couplings requires positive frequencies");
    Couplings c;
    const double denom = std::sqrt(omega_r * omega_q);
    c.lambda_x = std::abs(g_x) / denom;
    c.lambda_y = std::abs(g_y) / denom;
    c.ratio = omega_q / omega_r;
    c.lambda = (g_x == g_y) ? c.lambda_x : kNaN;
    return c;
}

Couplings couplings(const models::ModelParams& p) {
    return couplings(p.omega_r, p.omega_q, p.g_x, p.g_y);
}

QuadraticBosonForm normal_effective(const Couplings& c) {
    const double lx2 = c.lambda_x * c.lambda_x;
    const double ly2 = c.lambda_y * c.lambda_y;
    QuadraticBosonForm q;
    q.A = 1.0 - 0.5 * (lx2 + ly2);
    q.B = 0.25 * (ly2 - lx2);
    q.C0 = -0.25 * (lx2 + ly2) - 0.5 * c.ratio;
    return q;
}

BogoliubovResult bogoliubov(const QuadraticBosonForm& q) {
    BogoliubovResult out;
    out.eta = (q.A >= 0.0) ? +1 : -1;
    const double disc = q.A * q.A - 4.0 * q.B * q.B;
    out.stable = disc >= 0.0;
    out.epsilon = out.stable ? out.eta * std::sqrt(disc) : kNaN;
    const double lo = q.A - 2.0 * q.B, hi = q.A + 2.0 * q.B;
    if (lo == 0.0 || hi == 0.0) {
        out.critical = true;
        out.r = kNaN;
    } else if (out.stable) {
        out.r = 0.25 * std::log(lo / hi);
    } else {
        out.r = kNaN;
    }
    return out;
}

const char* phase_name(PhaseLabel p) {
    switch (p) {
        case PhaseLabel::Normal: return "Normal";
        case PhaseLabel::SuperradiantX: return "SuperradiantX";
        case PhaseLabel::SuperradiantY: return "SuperradiantY";
        case PhaseLabel::U1Line: return "U1Line";
        case PhaseLabel::Critical: return "Critical";
    }
    return "?";
}

PhaseLabel classify_phase(const Couplings& c, double tol) {
    const double m = std::max(c.lambda_x, c.lambda_y);
    if (std::abs(m - 1.0) <= tol) return PhaseLabel::Critical;
    if (m < 1.0) return PhaseLabel::Normal;
    if (std::abs(c.lambda_x - c.lambda_y) <= tol * std::max(1.0, m)) return PhaseLabel::U1Line;
    return c.lambda_x > c.lambda_y ? PhaseLabel::SuperradiantX : PhaseLabel::SuperradiantY;
}

SuperradiantFrame superradiant_frame(const Couplings& c) {
    const double m = std::max(c.lambda_x, c.lambda_y);
    if (!(m > 1.0))
        fail_validation(kModule, "not_superradiant",
                        "not in superradiant region: max(lambda_x, lambda_y) <= 1");
    SuperradiantFrame f;
    const PhaseLabel phase = classify_phase(c);
    f.branch = (phase == PhaseLabel::SuperradiantY) ? PhaseLabel::SuperradiantY
               : (phase == PhaseLabel::U1Line)      ? PhaseLabel::U1Line
                                                    : PhaseLabel::SuperradiantX;
    const double l = (f.branch == PhaseLabel::SuperradiantY) ? c.lambda_y : c.lambda_x;
    const double l2 = l * l;
    f.alpha_sq = 0.25 * c.ratio * (l2 - 1.0 / l2);
    const double mag = std::sqrt(f.alpha_sq);
    f.theta = 0.0;
    if (f.branch == PhaseLabel::SuperradiantY) {
        f.alpha = cx(0.0, mag);
        f.omega_q_tilde = c.ratio * l2;
        f.lambda_x_tilde = c.lambda_x / c.lambda_y;
        f.lambda_y_tilde = 1.0 / l2;
    } else {
        f.alpha = cx(mag, 0.0); // theta = 0 representative on the U1 line
        f.omega_q_tilde = c.ratio * l2;
        f.lambda_x_tilde = 1.0 / l2;
        f.lambda_y_tilde = c.lambda_y / c.lambda_x;
    }
    if (f.branch == PhaseLabel::U1Line) {
        f.epsilon_tilde = 0.0; // Goldstone mode
        f.r_tilde = -std::numeric_limits<double>::infinity();
    } else {
        const double ax = 1.0 - f.lambda_x_tilde * f.lambda_x_tilde;
        const double ay = 1.0 - f.lambda_y_tilde * f.lambda_y_tilde;
        f.epsilon_tilde = std::sqrt(ax * ay);
        f.r_tilde = 0.25 * std::log(ay / ax);
    }
    return f;
}

GroundStateInfo ground_state(const Couplings& c) {
    GroundStateInfo g;
    g.phase = classify_phase(c);
    const double R = c.ratio;
    switch (g.phase) {
        case PhaseLabel::Normal:
        case PhaseLabel::Critical:
            g.energy = -0.5 * R;
            g.n_photon = 0.0;
            break;
        case PhaseLabel::SuperradiantX:
        case PhaseLabel::U1Line: {
            const double l2 = c.lambda_x * c.lambda_x;
            g.energy = -0.25 * R * (l2 + 1.0 / l2);
            g.n_photon = 0.25 * R * (l2 - 1.0 / l2);
            break;
        }
        case PhaseLabel::SuperradiantY: {
            const double l2 = c.lambda_y * c.lambda_y;
            g.energy = -0.25 * R * (l2 + 1.0 / l2);
            g.n_photon = 0.25 * R * (l2 - 1.0 / l2);
            break;
        }
    }
    return g;
}

TwoQubitLevels two_qubit_levels(double lambda_x_p, double lambda_y_p) {
    if (lambda_x_p < 0.0 || lambda_y_p < 0.0)
        fail_validation(kModule, "invalid_params", "two_qubit_levels requires non-negative inputs");
    TwoQubitLevels t;
    const double x2 = lambda_x_p * lambda_x_p;
    const double y2 = lambda_y_p * lambda_y_p;
    const double s = x2 + y2;
    const double diff = x2 - y2;
    const double prod = x2 * y2;
    t.w = std::sqrt(diff * diff + 16.0);
    t.Lambda_1 = 0.5 * (s + t.w);
    t.Lambda_2 = 0.5 * std::abs(t.w - s);
    const double u = 4.0 / t.w;
    t.xi_1 = std::sqrt(1.0 + u) - std::sqrt(1.0 - u);
    t.xi_2 = std::sqrt(1.0 + u) + std::sqrt(1.0 - u);

    const bool small = prod < 4.0;
    const bool xdom = x2 >= y2;
    if (std::abs(prod - 4.0) <= 1e-12 * std::max(4.0, prod)) {
        t.regime = TwoQubitRegime::Boundary;
        return t; // coefficient table ambiguous on the boundary
    }
    const double xi1 = t.xi_1, xi2 = t.xi_2;
    if (small && xdom) {
        t.regime = TwoQubitRegime::SmallX;
        t.b_x[0] = xi1;  t.b_x[1] = -xi1; t.b_x[2] = xi2;
        t.b_y[0] = xi2;  t.b_y[1] = -xi2; t.b_y[2] = xi1;
    } else if (small) {
        t.regime = TwoQubitRegime::SmallY;
        t.b_x[0] = -xi2; t.b_x[1] = xi2;  t.b_x[2] = -xi1;
        t.b_y[0] = -xi1; t.b_y[1] = xi1;  t.b_y[2] = -xi2;
    } else if (xdom) {
        t.regime = TwoQubitRegime::LargeX;
        t.b_x[0] = 0.0;  t.b_x[1] = xi1;  t.b_x[2] = -xi2;
        t.b_y[0] = 0.0;  t.b_y[1] = xi2;  t.b_y[2] = xi1;
    } else {
        t.regime = TwoQubitRegime::LargeY;
        t.b_x[0] = 0.0;  t.b_x[1] = -xi2; t.b_x[2] = -xi1;
        t.b_y[0] = 0.0;  t.b_y[1] = xi1;  t.b_y[2] = xi2;
    }
    return t;
}

EffectiveGap two_qubit_gap(double lambda_x_p, double lambda_y_p) {
    const TwoQubitLevels t = two_qubit_levels(lambda_x_p, lambda_y_p);
    EffectiveGap g;
    if (t.regime == TwoQubitRegime::Boundary) {
        g.boundary = true;
        g.formula_branch = "boundary";
    }
    const double x2 = lambda_x_p * lambda_x_p;
    const double y2 = lambda_y_p * lambda_y_p;
    if (x2 * y2 > 4.0) {
        g.value = 3.0;
        g.formula_branch = "large";
        return g;
    }
    // D_k = lambda_k'^2 omega_q'; the ratio to Lambda_1 is scale-free.
    const double xi_sq_x = (x2 >= y2) ? t.xi_1 * t.xi_1 : t.xi_2 * t.xi_2;
    const double xi_sq_y = (x2 >= y2) ? t.xi_2 * t.xi_2 : t.xi_1 * t.xi_1;
    const double fx = 1.0 - x2 * xi_sq_x / (3.0 * t.Lambda_1);
    const double fy = 1.0 - y2 * xi_sq_y / (3.0 * t.Lambda_1);
    const double rad = fx * fy;
    if (rad < 0.0) {
        g.stable = false;
        g.value = -3.0 * std::sqrt(-rad);
    } else {
        g.value = 3.0 * std::sqrt(rad);
    }
    if (!g.boundary) g.formula_branch = (x2 >= y2) ? "small_x" : "small_y";
    return g;
}

EffectiveGap n_qubit_gap(double lambda, int n_qubits) {
    if (n_qubits < 1)
        fail_validation(kModule, "invalid_params", "n_qubit_gap requires N >= 1");
    if (lambda < 0.0)
        fail_validation(kModule, "invalid_params", "n_qubit_gap requires lambda >= 0");
    EffectiveGap g;
    const double l2 = lambda * lambda;
    const double N = static_cast<double>(n_qubits);
    if (std::abs(l2 - 2.0) <= 2e-12) {
        // Level crossing; both adjacent branches give 2 Omega_r from l2 < 2 /
        // odd l2 > 2, the even branch jumps to 3 Omega_r.
        g.boundary = true;
        g.formula_branch = "crossing";
        g.value = 3.0 * (1.0 - N * l2 / (3.0 * ((N - 1.0) * l2 + 2.0)));
        return g;
    }
    if (l2 < 2.0) {
        g.value = 3.0 * (1.0 - N * l2 / (3.0 * ((N - 1.0) * l2 + 2.0)));
        g.formula_branch = "below_crossing";
    } else if (n_qubits % 2 == 0) {
        g.value = 3.0;
        g.formula_branch = "even_above_crossing";
    } else {
        g.value = 3.0 * (1.0 - l2 / 6.0);
        g.formula_branch = "odd_above_crossing";
        if (g.value < 0.0) g.stable = false; // condensed past lambda = sqrt(6)
    }
    return g;
}

QubitGroundLabel qubit_ground_label(int n_qubits, double D, double omega_q) {
    if (n_qubits < 1)
        fail_validation(kModule, "invalid_params", "qubit_ground_label requires N >= 1");
    if (!(omega_q > 0.0) || D < 0.0)
        fail_validation(kModule, "invalid_params", "qubit_ground_label requires positive energies");
    QubitGroundLabel out;
    const double half_n = 0.5 * static_cast<double>(n_qubits);
    if (std::abs(D - 2.0 * omega_q) <= 1e-12 * std::max(D, 2.0 * omega_q)) {
        out.degenerate = true;
        out.j = half_n;
        out.m_z = -half_n;
        return out;
    }
    if (D < 2.0 * omega_q) {
        out.j = half_n;
        out.m_z = -half_n;
    } else if (n_qubits % 2 == 0) {
        out.j = 0.0;
        out.m_z = 0.0;
    } else {
        out.j = 0.5;
        out.m_z = -0.5;
    }
    return out;
}

} // namespace qptsim::effective
