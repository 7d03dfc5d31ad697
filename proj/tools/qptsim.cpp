// qptsim.cpp — command-line front end: spectrum, scan, effective, circuit, verify

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qptsim/checks.hpp"
#include "qptsim/circuit.hpp"
#include "qptsim/effective.hpp"
#include "qptsim/scan.hpp"

using json = nlohmann::json;
using namespace qptsim;

namespace {

std::string fmt6(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Flat JSON object of named scalars, 6 significant digits.
class FlatJson {
public:
    void add(const std::string& key, double v) { items_.push_back({key, fmt6(v)}); }
    void add(const std::string& key, const char* v) { items_.push_back({key, '"' + std::string(v) + '"'}); }
    void add(const std::string& key, bool v) { items_.push_back({key, v ? "true" : "false"}); }
    void add_int(const std::string& key, long v) { items_.push_back({key, std::to_string(v)}); }
    std::string str() const {
        std::string out = "{\n";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            out += "  \"" + items_[i].first + "\": " + items_[i].second;
            if (i + 1 < items_.size()) out += ',';
            out += '\n';
        }
        out += "}\n";
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

json load_config(const std::string& path, const std::set<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) fail_validation("cli", "config_io", "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail_validation("cli", "config_parse", std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) fail_validation("cli", "config_parse", "config must be a JSON object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            fail_validation("cli", "unknown_key", "unknown config key: " + item.key());
    return j;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) fail_validation("cli", "output_io", "cannot open output file: " + path);
    out << content;
}

scan::ModelKind parse_model(const std::string& name) {
    if (name == "one_qubit") return scan::ModelKind::OneQubit;
    if (name == "multi_qubit") return scan::ModelKind::MultiQubit;
    if (name == "collective") return scan::ModelKind::Collective;
    fail_validation("cli", "invalid_model",
                    "model must be one_qubit, multi_qubit or collective, got " + name);
}

int cmd_effective(double lambda_x, double lambda_y, double ratio, const std::string& out_path) {
    const auto c = effective::couplings(1.0, ratio, lambda_x * std::sqrt(ratio),
                                        lambda_y * std::sqrt(ratio));
    const auto phase = effective::classify_phase(c);
    const auto gs = effective::ground_state(c);

    FlatJson out;
    out.add("lambda_x", c.lambda_x);
    out.add("lambda_y", c.lambda_y);
    out.add("ratio", c.ratio);
    out.add("phase", effective::phase_name(phase));
    out.add("epsilon_G", gs.energy);
    out.add("n_G", gs.n_photon);
    const auto q = effective::normal_effective(c);
    const auto bog = effective::bogoliubov(q);
    out.add("normal_A", q.A);
    out.add("normal_B", q.B);
    out.add("stable", bog.stable);
    out.add_int("eta", bog.eta);
    if (bog.stable) {
        out.add("epsilon", bog.epsilon);
        if (!bog.critical) out.add("r", bog.r);
    }
    if (phase != effective::PhaseLabel::Normal && phase != effective::PhaseLabel::Critical) {
        const auto fr = effective::superradiant_frame(c);
        out.add("alpha_re", std::real(fr.alpha));
        out.add("alpha_im", std::imag(fr.alpha));
        out.add("omega_q_tilde", fr.omega_q_tilde);
        out.add("lambda_x_tilde", fr.lambda_x_tilde);
        out.add("lambda_y_tilde", fr.lambda_y_tilde);
        out.add("epsilon_tilde", fr.epsilon_tilde);
        out.add("r_tilde", fr.r_tilde);
        out.add("theta", fr.theta);
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_circuit(const std::string& config_path, bool two_qubit, const std::string& out_path) {
    const auto j = load_config(config_path,
                               {"c_r", "c_q", "c_g", "l_r", "l_1", "l_2", "e_j", "phi_ext",
                                "x_i", "d", "hbar", "phi0", "mode_velocity_scale",
                                "fluxonium_basis", "units"});
    circuit::CircuitElements e;
    if (j.value("units", std::string("si")) == "dimensionless")
        e = circuit::CircuitElements::dimensionless();
    else if (j.value("units", std::string("si")) != "si")
        fail_validation("cli", "invalid_units", "units must be si or dimensionless");
    e.C_r = j.at("c_r").get<double>();
    e.C_q = j.at("c_q").get<double>();
    e.C_g = j.at("c_g").get<double>();
    e.L_r = j.at("l_r").get<double>();
    e.L_1 = j.at("l_1").get<double>();
    e.L_2 = j.at("l_2").get<double>();
    e.E_J = j.at("e_j").get<double>();
    e.x_i = j.at("x_i").get<double>();
    e.d = j.at("d").get<double>();
    if (j.contains("phi_ext")) e.Phi_ext = j.at("phi_ext").get<double>();
    if (j.contains("hbar")) e.hbar = j.at("hbar").get<double>();
    if (j.contains("phi0")) e.Phi0 = j.at("phi0").get<double>();
    if (j.contains("mode_velocity_scale"))
        e.mode_velocity_scale = j.at("mode_velocity_scale").get<double>();
    const std::size_t basis = j.value("fluxonium_basis", std::size_t{32});

    const auto p = two_qubit ? circuit::derive_two_qubit(e, basis)
                             : circuit::derive_one_qubit(e, basis);
    if (p.two_level_strained)
        std::cerr << "warning: two-level approximation strained, E2 - E1 < 3 (E1 - E0)\n";

    FlatJson out;
    out.add_int("n_qubits", p.n_qubits);
    out.add("c_sigma_sq", p.C_sigma_sq);
    out.add("l_sigma_sq", p.L_sigma_sq);
    out.add("c_r_bar", p.C_r_bar);
    out.add("c_q_bar", p.C_q_bar);
    out.add("c_g_bar", p.C_g_bar);
    out.add("l_r_bar", p.L_r_bar);
    out.add("l_q_bar", p.L_q_bar);
    out.add("l_g_bar", p.L_g_bar);
    if (two_qubit) {
        out.add("c_qq_bar", p.C_qq_bar);
        out.add("l_qq_bar", p.L_qq_bar);
    }
    out.add("omega_r_bare", p.Omega_r);
    out.add("k", p.k);
    out.add("omega_r", p.omega_r);
    out.add("omega_q", p.omega_q);
    out.add("phi0_q", p.phi0_q);
    out.add("g_x", p.g_x);
    out.add("g_y", p.g_y);
    if (two_qubit) {
        out.add("d_x", p.D_x);
        out.add("d_y", p.D_y);
    }
    out.add("two_level_strained", p.two_level_strained);
    out.add_int("fluxonium_basis_used", static_cast<long>(p.fluxonium_basis_used));
    write_output(out_path, out.str());
    return 0;
}

int cmd_scan(const std::string& config_path, const std::string& out_path, unsigned threads) {
    const auto j = load_config(config_path,
                               {"model", "lambda_x_min", "lambda_x_max", "nx", "lambda_y_min",
                                "lambda_y_max", "ny", "ratio", "n_qubits", "sign_x", "sign_y",
                                "resonator_prefactor", "qubit_prefactor", "initial_n_cut",
                                "displaced_frame", "j"});
    scan::GridSpec spec;
    spec.model = parse_model(j.value("model", std::string("one_qubit")));
    const bool rotated = spec.model != scan::ModelKind::OneQubit;
    spec.lambda_x_min = j.at("lambda_x_min").get<double>();
    spec.lambda_x_max = j.at("lambda_x_max").get<double>();
    spec.nx = j.at("nx").get<std::size_t>();
    spec.lambda_y_min = j.value("lambda_y_min", 0.0);
    spec.lambda_y_max = j.value("lambda_y_max", 0.0);
    spec.ny = j.value("ny", std::size_t{1});
    spec.ratio = j.value("ratio", 50.0);
    spec.n_qubits = j.value("n_qubits", rotated ? 2 : 1);
    spec.sign_x = j.value("sign_x", 1);
    spec.sign_y = j.value("sign_y", 1);
    spec.resonator_prefactor = j.value("resonator_prefactor", rotated ? 3 : 1);
    spec.qubit_prefactor = j.value("qubit_prefactor", rotated ? 2 : 1);
    spec.initial_n_cut = j.value("initial_n_cut", std::size_t{16});
    spec.displaced_frame = j.value("displaced_frame", true);
    spec.j = j.value("j", -1.0);

    const auto rows = scan::scan_grid(spec, threads);
    for (const auto& r : rows)
        if (!r.error.empty())
            std::cerr << "warning: grid point (" << r.lambda_x << ", " << r.lambda_y
                      << ") failed: " << r.error << "\n";
    write_output(out_path, scan::to_csv(rows));
    return 0;
}

int cmd_spectrum(const std::string& config_path, const std::string& out_path) {
    const auto j = load_config(config_path,
                               {"model", "omega_r", "omega_q", "g_x", "g_y", "n_qubits", "d_x",
                                "d_y", "sign_x", "sign_y", "resonator_prefactor",
                                "qubit_prefactor", "n_cut", "alpha_re", "alpha_im", "j",
                                "auto_cutoff"});
    models::ModelParams p;
    const auto kind = parse_model(j.value("model", std::string("one_qubit")));
    const bool rotated = kind != scan::ModelKind::OneQubit;
    p.omega_r = j.value("omega_r", 1.0);
    p.omega_q = j.at("omega_q").get<double>();
    p.g_x = j.value("g_x", 0.0);
    p.g_y = j.value("g_y", 0.0);
    p.n_qubits = j.value("n_qubits", rotated ? 2 : 1);
    p.D_x = j.value("d_x", 0.0);
    p.D_y = j.value("d_y", 0.0);
    p.sign_x = j.value("sign_x", 1);
    p.sign_y = j.value("sign_y", 1);
    p.resonator_prefactor = j.value("resonator_prefactor", rotated ? 3 : 1);
    p.qubit_prefactor = j.value("qubit_prefactor", rotated ? 2 : 1);

    models::FrameSpec frame;
    frame.alpha = num::cx(j.value("alpha_re", 0.0), j.value("alpha_im", 0.0));
    scan::SpectrumOptions opt;
    opt.initial_n_cut = j.value("n_cut", std::size_t{16});
    opt.auto_cutoff = j.value("auto_cutoff", true);
    const double jblock = j.value("j", -1.0);

    const auto s = scan::spectrum(p, kind, jblock, frame, opt);
    FlatJson out;
    out.add("ground_energy", s.ground_energy);
    out.add("gap", s.gap);
    out.add("n_G", s.n_photon);
    out.add("parity", s.parity);
    out.add("excitation", s.excitation);
    out.add_int("cutoff_used", static_cast<long>(s.cutoff_used));
    out.add("converged", s.converged);
    write_output(out_path, out.str());
    return 0;
}

int cmd_verify(std::uint64_t seed) {
    auto results = checks::run_module_invariants(seed);
    auto acc = checks::run_acceptance(seed);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i].name = "acceptance." + acc[i].name;
        results.push_back(std::move(acc[i]));
    }
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-38s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (r.pass) ++passed;
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qptsim — few-qubit ultrastrong-coupling circuit QED simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    unsigned threads = 1;
    std::uint64_t seed = 12345;

    auto* sub_spectrum = app.add_subcommand("spectrum", "exact diagonalization of one model");
    sub_spectrum->add_option("--config", config_path, "model config JSON")->required();
    sub_spectrum->add_option("--out", out_path, "output path (default stdout)");

    auto* sub_scan = app.add_subcommand("scan", "evaluate a coupling grid and emit CSV");
    sub_scan->add_option("--config", config_path, "grid config JSON")->required();
    sub_scan->add_option("--out", out_path, "output CSV path")->required();
    sub_scan->add_option("--threads", threads, "worker threads (0 = auto)")
        ->envname("QPTSIM_THREADS");

    double lambda_x = 0.0, lambda_y = 0.0, ratio = 50.0;
    auto* sub_eff = app.add_subcommand("effective", "closed-form effective theory at one point");
    sub_eff->add_option("--lambda-x", lambda_x, "dimensionless coupling lambda_x")->required();
    sub_eff->add_option("--lambda-y", lambda_y, "dimensionless coupling lambda_y")->required();
    sub_eff->add_option("--ratio", ratio, "omega_q / omega_r");
    sub_eff->add_option("--out", out_path, "output path (default stdout)");

    bool two_qubit = false;
    auto* sub_circuit = app.add_subcommand("circuit", "derive Hamiltonian parameters from elements");
    sub_circuit->add_option("--config", config_path, "circuit element JSON")->required();
    sub_circuit->add_flag("--two-qubit", two_qubit, "two-qubit cell topology");
    sub_circuit->add_option("--out", out_path, "output path (default stdout)");

    auto* sub_verify = app.add_subcommand("verify", "run the built-in verification suite");
    sub_verify->add_option("--seed", seed, "seed for randomized property checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sub_spectrum->parsed()) return cmd_spectrum(config_path, out_path);
        if (sub_scan->parsed()) return cmd_scan(config_path, out_path, threads);
        if (sub_eff->parsed()) return cmd_effective(lambda_x, lambda_y, ratio, out_path);
        if (sub_circuit->parsed()) return cmd_circuit(config_path, two_qubit, out_path);
        if (sub_verify->parsed()) return cmd_verify(seed);
    } catch (const Error& e) {
        std::cerr << "ERROR " << e.module_name() << ":" << e.code() << ": " << e.message()
                  << "\n";
        return e.kind() == ErrorKind::Validation ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR cli:internal: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
