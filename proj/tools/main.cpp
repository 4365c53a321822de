// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gqc/algebra.hpp"
#include "gqc/circuit_io.hpp"
#include "gqc/compiler.hpp"
#include "gqc/layout_io.hpp"
#include "gqc/parallel.hpp"
#include "gqc/sequence_io.hpp"
#include "gqc/simulator.hpp"
#include "gqc/statevec.hpp"
#include "gqc/verify.hpp"

namespace {

using namespace gqc;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int threads = 1;
    std::uint64_t seed = 0;
    std::size_t max_qubits = 22;
    bool verbose = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw UsageError("failed writing '" + path + "'");
}

std::shared_ptr<const Layout> read_layout(const std::string& path) {
    auto layout = std::make_shared<const Layout>(load_layout(path));
    return layout;
}

std::string fmt_sci(double x) {
    std::ostringstream os;
    os << std::setprecision(4) << std::scientific << x;
    return os.str();
}

// --- validate-layout ------------------------------------------------------

int cmd_validate(const std::string& path) {
    const Layout layout = load_layout(path);
    auto report = validate_layout(layout);
    std::cout << describe_layout(layout) << "\n";
    if (report.valid()) {
        std::cout << "valid (|D| = " << layout.size() << ", |P| = " << layout.logical_count() << ")\n";
        return kExitOk;
    }
    std::cout << "invalid\n";
    for (const auto& v : report.violations) {
        std::cout << "  constraint " << to_string(v.constraint) << ": " << v.message;
        if (!v.witness.empty()) {
            std::cout << " [witness";
            for (const auto& w : v.witness) std::cout << " " << layout.group().format(w);
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return kExitFail;
}

// --- compile ----------------------------------------------------------------

CompilationBudget parse_mode(const std::string& mode, double epsilon) {
    CompilationBudget b;
    b.epsilon_total = epsilon;
    if (mode == "paper") {
        b.mode = BudgetMode::paper_bound;
    } else if (mode == "calibrated") {
        b.mode = BudgetMode::calibrated;
    } else if (mode.rfind("fixed:", 0) == 0) {
        b.mode = BudgetMode::fixed;
        const auto rest = mode.substr(6);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) throw UsageError("fixed mode needs fixed:N1,N2");
        try {
            b.n1 = std::stoull(rest.substr(0, comma));
            b.n2 = std::stoull(rest.substr(comma + 1));
        } catch (const std::exception&) {
            throw UsageError("bad fixed mode '" + mode + "'");
        }
        if (b.n1 == 0 || b.n2 == 0) throw UsageError("fixed mode needs positive N1, N2");
    } else {
        throw UsageError("unknown mode '" + mode + "' (paper, fixed:N1,N2, calibrated)");
    }
    return b;
}

int cmd_compile(const Config& cfg, const std::string& layout_path, const std::string& circuit_path, double epsilon,
                const std::string& mode, const std::string& out_path) {
    auto layout = read_layout(layout_path);
    require_valid(*layout);
    if (layout->size() > cfg.max_qubits) {
        std::cerr << "note: |D| = " << layout->size() << " exceeds --max-qubits; relying on support reduction\n";
    }
    auto circuit = load_circuit(circuit_path, layout);
    auto budget = parse_mode(mode, epsilon);
    auto seq = compile_circuit(circuit, budget);
    save_sequence(out_path, seq, layout->group());
    bool all_met = true;
    for (const auto& g : seq.metadata.gates) {
        std::cout << g.target << ": N1=" << g.n1 << " N2=" << g.n2 << " eps=" << fmt_sci(g.epsilon)
                  << " predicted=" << fmt_sci(g.predicted_bound);
        if (g.measured_error) std::cout << " measured=" << fmt_sci(*g.measured_error);
        if (g.leakage) std::cout << " leakage=" << fmt_sci(*g.leakage);
        if (g.met) {
            std::cout << (*g.met ? " met" : " NOT met");
            all_met = all_met && *g.met;
        }
        std::cout << "\n";
    }
    std::cout << "instructions: " << seq.instruction_count() << " (expanded), wrote " << out_path << "\n";
    return all_met ? kExitOk : kExitFail;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const Config& cfg, const std::string& layout_path, const std::string& seq_path,
                 const std::string& initial, double amp_min, const std::string& out_path) {
    auto layout = read_layout(layout_path);
    require_valid(*layout);
    AdmissibleCode code(*layout);
    auto seq = load_sequence(seq_path, layout->group());
    if (initial.size() != code.logical_qubits()) {
        throw UsageError("--initial needs " + std::to_string(code.logical_qubits()) + " logical bits");
    }
    const BasisIndex start = code.encode(initial);
    const SiteSupport support = SiteSupport::of(layout->size(), reachable_support(*layout, seq, code.support_mask()));
    if (support.active_count() > cfg.max_qubits) {
        throw ResourceLimitError("reachable support has " + std::to_string(support.active_count()) +
                                 " sites, above --max-qubits " + std::to_string(cfg.max_qubits));
    }
    SequenceRunner runner(layout);
    PureState state = PureState::basis_state(layout, start, support);
    runner.run(seq, state);
    auto proj = project_admissible(state);

    ordered_json j;
    j["format"] = "gqc-state";
    j["version"] = std::string(kVersion);
    j["initial"] = initial;
    j["active_sites"] = support.active_count();
    j["leakage"] = proj.leakage;
    auto logical = ordered_json::array();
    for (Eigen::Index i = 0; i < proj.logical.size(); ++i)
        logical.push_back({proj.logical[i].real(), proj.logical[i].imag()});
    j["logical"] = logical;
    auto dump = ordered_json::array();
    for (const auto& e : dump_state(state, amp_min)) dump.push_back({e.bits, e.re, e.im});
    j["amplitudes"] = dump;
    const std::string text = j.dump(1) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
        std::cout << "leakage " << fmt_sci(proj.leakage) << ", wrote " << out_path << "\n";
    }
    return kExitOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Config& cfg, const std::string& layout_path, const std::string& suite,
               const std::string& out_path, const std::string& csv_path, std::uint64_t samples) {
    auto layout = read_layout(layout_path);
    require_valid(*layout);
    VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.addr_samples = samples;
    auto checks = run_suite(layout, suite, opts);
    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << " [" << c.instance << "] max_dev=" << fmt_sci(c.max_deviation)
                  << " tol=" << fmt_sci(c.tolerance) << " cases=" << c.cases;
        if (!c.note.empty() && cfg.verbose) std::cout << " (" << c.note << ")";
        std::cout << "\n";
        if (!c.pass) {
            std::cout << "  counterexample:";
            for (const auto& w : c.witness) std::cout << " " << w;
            std::cout << "\n";
        }
        all_pass = all_pass && c.pass;
    }
    if (!out_path.empty()) write_text(out_path, report_to_json(checks, describe_layout(*layout), cfg.seed));
    if (!csv_path.empty() && (suite == "all" || suite == "scaling")) {
        std::vector<std::uint64_t> ns;
        for (std::uint64_t n = 16; n <= 4096; n *= 2) ns.push_back(n);
        auto t = commutator_scaling(random_unit_hermitian(cfg.seed), random_unit_hermitian(cfg.seed + 1), ns, {});
        write_text(csv_path, scaling_csv(t));
    }
    std::cout << (all_pass ? "all-pass" : "failures") << " (" << checks.size() << " checks)\n";
    return all_pass ? kExitOk : kExitFail;
}

// --- universality -------------------------------------------------------------

int cmd_universality(const std::vector<int>& ns, const std::string& generator, int distance,
                     const std::string& out_path) {
    GateSet gates;
    if (generator == "none") {
        gates.two_qubit.reset();
    } else {
        gates.two_qubit = TwoQubitHermitian::from_name(generator).matrix();
    }
    gates.distance = distance;
    gates.label = generator;
    std::cout << std::left << std::setw(4) << "n" << std::setw(12) << "eigenspace" << std::setw(10) << "closure"
              << std::setw(12) << "target(u)" << std::setw(12) << "verdict" << "wall(s)\n";
    bool all = true;
    auto rows = ordered_json::array();
    for (int n : ns) {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = universality_check(n, gates);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string verdict = r.universal ? "universal" : "not";
        std::cout << std::setw(4) << n << std::setw(12) << r.eigenspace_dimension << std::setw(10)
                  << r.closure_dimension << std::setw(12) << r.target_u << std::setw(12) << verdict << std::fixed
                  << std::setprecision(2) << secs << std::defaultfloat << "   algebra=" << r.algebra << "\n";
        all = all && r.universal;
        rows.push_back({{"n", n},
                        {"eigenspace_dimension", r.eigenspace_dimension},
                        {"closure_dimension", r.closure_dimension},
                        {"target_u", r.target_u},
                        {"target_su", r.target_su},
                        {"algebra", r.algebra},
                        {"contains_identity", r.contains_identity},
                        {"universal", r.universal}});
    }
    if (!out_path.empty()) {
        ordered_json j;
        j["format"] = "gqc-universality";
        j["version"] = std::string(kVersion);
        j["generator"] = generator;
        j["distance"] = distance;
        j["rows"] = rows;
        write_text(out_path, j.dump(1) + "\n");
    }
    return all ? kExitOk : kExitFail;
}

// --- error-scaling ------------------------------------------------------------

std::vector<std::uint64_t> powers(std::uint64_t lo, std::uint64_t hi) {
    if (lo == 0 || hi < lo) throw UsageError("need 0 < --n-min <= --n-max");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

int cmd_error_scaling(const Config& cfg, const std::string& kind, const std::string& layout_path,
                      const std::string& circuit_path, std::uint64_t n_min, std::uint64_t n_max, std::uint64_t n1,
                      const std::string& csv_path) {
    const auto ns = powers(n_min, n_max);
    ScalingTable t;
    if (kind == "commutator") {
        t = commutator_scaling(random_unit_hermitian(cfg.seed), random_unit_hermitian(cfg.seed + 1), ns, {});
    } else {
        if (layout_path.empty() || circuit_path.empty()) throw UsageError(kind + " scaling needs --layout and --circuit");
        auto layout = read_layout(layout_path);
        require_valid(*layout);
        auto circuit = load_circuit(circuit_path, layout);
        if (circuit.gates.size() != 1) throw UsageError("scaling circuits must hold exactly one gate");
        if (kind == "outer") {
            t = outer_scaling(layout, circuit.gates[0], ns);
        } else if (kind == "nested") {
            t = nested_scaling(layout, circuit.gates[0], n1, ns, {});
        } else {
            throw UsageError("unknown --kind '" + kind + "'");
        }
    }
    std::cout << "# " << kVersion << "\n# " << t.description << "\n";
    std::cout << "# slope " << t.slope << ", c_fit " << t.c_fit << ", M " << t.m << "\n";
    const std::string csv = scaling_csv(t);
    std::cout << csv;
    if (!csv_path.empty()) write_text(csv_path, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gqc: compile and check logical gates built from global lattice Hamiltonians"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--threads", cfg.threads, "Worker threads; results do not depend on this")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for randomized checks (default 0)");
    app.add_option("--max-qubits", cfg.max_qubits, "Largest simulated site count (default 22, at most 24)")
        ->check(CLI::Range(1, 24));
    app.add_flag("-v,--verbose", cfg.verbose, "Print check notes");

    std::string layout_path, circuit_path, out_path, seq_path, csv_path, suite = "all", mode = "calibrated";
    std::string initial, generator = "A", kind = "commutator";
    double epsilon = 0.1, amp_min = 1e-12;
    std::uint64_t samples = 1000, n_min = 16, n_max = 4096, n1 = 1024;
    std::vector<int> ns;
    int distance = 1;

    auto* validate = app.add_subcommand("validate-layout", "Check a layout file against the difference-set constraints");
    validate->add_option("--layout", layout_path,
                         "Layout JSON: group {kind cyclic n | grid l m}, D, P (or {family, params}), r, r', W")
        ->required();

    auto* compile = app.add_subcommand("compile", "Compile a logical circuit to a global gate sequence");
    compile->add_option("--layout", layout_path, "Layout JSON")->required();
    compile->add_option("--circuit", circuit_path,
                        "Circuit JSON: gates [{kind real_rot|imag_rot, delta 0|1, T, p, q}]")
        ->required();
    compile->add_option("--epsilon", epsilon, "Total operator-norm budget")->check(CLI::PositiveNumber);
    compile->add_option("--mode", mode, "paper | fixed:N1,N2 | calibrated");
    compile->add_option("--out", out_path,
                        "Sequence JSON: metadata and instructions (two_qubit, one_qubit, repeat {count, body})")
        ->required();

    auto* simulate = app.add_subcommand("simulate", "Run a gate sequence on an admissible basis state");
    simulate->add_option("--layout", layout_path, "Layout JSON")->required();
    simulate->add_option("--sequence", seq_path, "Sequence JSON")->required();
    simulate->add_option("--initial", initial, "Logical bits, one per site of P in ascending order")->required();
    simulate->add_option("--amp-min", amp_min, "Smallest amplitude modulus listed in the dump");
    simulate->add_option("--out", out_path, "State JSON: leakage, logical amplitudes, [bits, re, im] entries");

    auto* verify = app.add_subcommand("verify", "Run identity and scaling checks on a layout");
    verify->add_option("--layout", layout_path, "Layout JSON")->required();
    verify->add_option("--suite", suite, "all | diagonal | addressing | blocks | scaling")
        ->check(CLI::IsMember({"all", "diagonal", "addressing", "blocks", "scaling"}));
    verify->add_option("--samples", samples, "Random triples for the commutator identity when n > 6");
    verify->add_option("--out", out_path, "Report JSON: checks with id, max_deviation, tolerance, pass, witness");
    verify->add_option("--csv", csv_path, "Commutator scaling table (N,error,bound)");

    auto* univ = app.add_subcommand("universality", "Lie closure on the shift-invariant sector");
    univ->add_option("--n", ns, "Qubit counts (repeatable, 2..10)")->required()->check(CLI::Range(2, 10));
    univ->add_option("--generator", generator, "Two-qubit generator A, R0, R1, I0, I1 or none");
    univ->add_option("--distance", distance, "Distance of the two-qubit term")->check(CLI::PositiveNumber);
    univ->add_option("--out", out_path, "Table JSON (no timings)");

    auto* scaling = app.add_subcommand("error-scaling", "Measure error against N and print N,error,bound");
    scaling->add_option("--kind", kind, "commutator | outer | nested")
        ->check(CLI::IsMember({"commutator", "outer", "nested"}));
    scaling->add_option("--layout", layout_path, "Layout JSON (outer, nested)");
    scaling->add_option("--circuit", circuit_path, "Single-gate circuit JSON (outer, nested)");
    scaling->add_option("--n-min", n_min, "Smallest N (powers of two up to --n-max)");
    scaling->add_option("--n-max", n_max, "Largest N");
    scaling->add_option("--n1", n1, "Inner repetitions for --kind nested");
    scaling->add_option("--csv", csv_path, "Also write the table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    set_num_threads(cfg.threads);

    try {
        if (*validate) return cmd_validate(layout_path);
        if (*compile) return cmd_compile(cfg, layout_path, circuit_path, epsilon, mode, out_path);
        if (*simulate) return cmd_simulate(cfg, layout_path, seq_path, initial, amp_min, out_path);
        if (*verify) return cmd_verify(cfg, layout_path, suite, out_path, csv_path, samples);
        if (*univ) return cmd_universality(ns, generator, distance, out_path);
        if (*scaling) return cmd_error_scaling(cfg, kind, layout_path, circuit_path, n_min, n_max, n1, csv_path);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
