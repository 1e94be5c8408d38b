// Copyright 2026 The quditsim Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "quditsim/grover.hpp"
#include "quditsim/leakage.hpp"
#include "quditsim/statevector.hpp"
#include "quditsim/toffoli.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace quditsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
    int n = 8;
    int d = 2;
    bool optimize = false;
    std::string out_path;
};

int cmd_decompose(const DecomposeArgs &args) {
    Circuit circuit = toffoli::decompose(args.n, args.d);
    if (args.optimize) {
        circuit = toffoli::optimize_cancel(circuit);
    }
    write_file(args.out_path, emit(circuit));

    const toffoli::DecompositionStats st = toffoli::stats(circuit, args.d);
    json j;
    j["n"] = args.n;
    j["d"] = args.d;
    j["two_qudit_count"] = st.two_qudit_count;
    j["parallel_depth"] = st.parallel_depth;
    j["max_level"] = st.max_level;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string circuit_path;
    std::string input;
    bool trace = false;
};

int cmd_simulate(const SimulateArgs &args) {
    const Circuit circuit = parse(read_file(args.circuit_path));
    std::vector<int> dims;
    for (const WireSpec &w : circuit.wires) {
        dims.push_back(w.physical_dim);
    }
    const std::vector<int> digits = parse_digit_string(args.input, dims);
    StateVector state = prepare_basis(dims, digits);

    if (args.trace) {
        std::cout << "cycle=0 state=" << format_digits(dims, digits) << "\n";
        for (const TraceRecord &rec : run(circuit, state, true)) {
            std::cout << "cycle=" << rec.cycle << " state=" << rec.state << "\n";
        }
    } else {
        run(circuit, state, false);
        const auto final_digits = basis_digits_of(state);
        std::cout << "output=" << (final_digits ? format_digits(dims, *final_digits) : std::string("superposed"))
                  << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// grover

struct GroverArgs {
    int n = 2;
    int d = 2;
    std::string marked;
    std::optional<int> iterations;
    bool as_json = false;
};

int cmd_grover(const GroverArgs &args) {
    std::vector<int> logical_dims(static_cast<std::size_t>(args.n), args.d);
    const std::vector<int> marked = parse_digit_string(args.marked, logical_dims);
    const grover::Problem problem = grover::make_problem(args.n, args.d, marked, args.iterations);
    const grover::Result result = grover::run(problem, true);

    if (args.as_json) {
        json j;
        j["n"] = args.n;
        j["d"] = args.d;
        j["marked"] = format_digits(logical_dims, marked);
        j["iterations"] = problem.iterations;
        j["success_probability"] = result.success_probability;
        j["trajectory"] = result.probability_trajectory;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "search over N=" << format_double(std::pow(args.d, args.n)) << " elements, marked="
                  << format_digits(logical_dims, marked) << ", iterations=" << problem.iterations << "\n";
        for (std::size_t k = 0; k < result.probability_trajectory.size(); ++k) {
            std::cout << "round=" << k + 1 << " p=" << format_double(result.probability_trajectory[k]) << "\n";
        }
        std::cout << "success_probability=" << format_double(result.success_probability) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// leakage

struct LeakageArgs {
    std::string model = "erasure";
    int d = 2;
    int n_min = 2;
    int n_max = 8;
    double p_l = 0.001;
    double t = 0.0;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::string leak_level = "d";
    std::string out_path;
};

int cmd_leakage(const LeakageArgs &args) {
    leakage::Config config;
    config.model = args.model == "unitary" ? leakage::Model::Unitary : leakage::Model::Erasure;
    config.p_l = args.p_l;
    config.t = args.t;
    config.seed = args.seed;
    config.trials = args.trials;
    config.leak_level_offset = args.leak_level == "d+1" ? 1 : 0;

    const std::vector<leakage::SweepRow> rows = leakage::sweep(config, args.d, args.n_min, args.n_max);

    std::ostringstream csv;
    csv << "n,N,p_l,analytic_survival,mc_success,mc_stderr,trials,seed\n";
    for (const leakage::SweepRow &row : rows) {
        char n_buf[32];
        std::snprintf(n_buf, sizeof n_buf, "%.0f", row.search_space);
        csv << row.n << ',' << n_buf << ',' << format_double(row.p_l) << ','
            << (std::isnan(row.analytic_survival) ? "" : format_double(row.analytic_survival)) << ',';
        if (row.mc_available) {
            csv << format_double(row.mc_success) << ',' << format_double(row.mc_stderr);
        } else {
            csv << ',';
        }
        csv << ',' << row.trials << ',' << row.seed << '\n';
    }

    if (args.out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_file(args.out_path, csv.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite;
    std::string fixture = "tests/fixtures/toffoli8_cycles.csv";
    std::string regen_path;
};

// The n=8, d=2 decomposition evaluated on one basis input: the seven forward
// time-cycle labels plus the state after the mirror.
std::vector<std::string> toffoli8_row(const toffoli::Decomposition &dec, const std::vector<int> &digits) {
    std::vector<int> dims;
    for (const WireSpec &w : dec.circuit.wires) {
        dims.push_back(w.physical_dim);
    }
    StateVector state = prepare_basis(dims, digits);
    const auto records = run(dec.circuit, state, true, toffoli::cycle_ends(dec.cycles));

    std::vector<std::string> row;
    row.push_back(format_digits(dims, digits));
    for (std::size_t c = 0; c < 7; ++c) {
        row.push_back(records[c].state);
    }
    row.push_back(records.back().state);
    return row;
}

std::vector<std::vector<std::string>> toffoli8_table() {
    const toffoli::Decomposition dec = toffoli::decompose_scheduled(8, 2);
    std::vector<std::vector<std::string>> rows;
    for (int input = 0; input < 256; ++input) {
        std::vector<int> digits(8);
        for (int w = 0; w < 8; ++w) {
            digits[static_cast<std::size_t>(w)] = (input >> (7 - w)) & 1;
        }
        rows.push_back(toffoli8_row(dec, digits));
    }
    return rows;
}

std::string table_to_csv(const std::vector<std::vector<std::string>> &rows) {
    std::ostringstream out;
    out << "input,cycle1,cycle2,cycle3,cycle4,cycle5,cycle6,cycle7,output\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<std::vector<std::string>> load_table_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open fixture '" + path + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream cell_in(line);
        std::string cell;
        while (std::getline(cell_in, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

int verify_toffoli_table(const VerifyArgs &args) {
    const auto computed = toffoli8_table();
    if (!args.regen_path.empty()) {
        write_file(args.regen_path, table_to_csv(computed));
        std::cout << "wrote " << computed.size() << " rows to " << args.regen_path << "\n";
        return kExitOk;
    }

    const auto fixture = load_table_csv(args.fixture);
    if (fixture.size() != computed.size()) {
        std::cerr << "row count mismatch: fixture has " << fixture.size() << ", simulation produced "
                  << computed.size() << "\n";
        return kExitMismatch;
    }
    for (std::size_t r = 0; r < computed.size(); ++r) {
        if (fixture[r] != computed[r]) {
            std::cerr << "mismatch at row " << r << " (input " << computed[r][0] << ")\n";
            for (std::size_t c = 0; c < computed[r].size() && c < fixture[r].size(); ++c) {
                if (fixture[r][c] != computed[r][c]) {
                    std::cerr << "  column " << c << ": fixture=" << fixture[r][c]
                              << " simulated=" << computed[r][c] << "\n";
                }
            }
            return kExitMismatch;
        }
    }
    std::cout << "toffoli-table: " << computed.size() << " rows match\n";
    return kExitOk;
}

int verify_equivalence_suite() {
    for (int d = 2; d <= 4; ++d) {
        for (int n = 3; n <= 8; ++n) {
            if (std::pow(d, n) > 65536.0) {
                continue;
            }
            const toffoli::EquivalenceReport report = toffoli::verify_equivalence(n, d);
            if (!report.ok()) {
                std::cerr << "equivalence failed for n=" << n << " d=" << d << ":\n";
                for (const std::string &m : report.mismatches) {
                    std::cerr << "  " << m << "\n";
                }
                if (!report.outputs_in_subspace) {
                    std::cerr << "  outputs left the computational subspace\n";
                }
                return kExitMismatch;
            }
            std::cout << "equivalence n=" << n << " d=" << d << ": " << report.inputs_checked
                      << " inputs match, max level " << report.max_intermediate_level << "\n";
        }
    }
    return kExitOk;
}

int verify_diffusion_suite() {
    const std::pair<int, int> cases[] = {{2, 2}, {3, 2}, {2, 3}};
    for (const auto &[n, d] : cases) {
        const Circuit circuit = grover::build_diffusion_circuit(n, d);
        const ComputationalMatrix extracted = extract_computational_matrix(circuit, d);
        const gates::UnitaryMatrix want = gates::build_diffusion(n, d);
        if (extracted.max_off_subspace > 1e-10 ||
            !gates::equal_up_to_global_phase(extracted.matrix, want, 1e-9)) {
            std::cerr << "diffusion circuit does not match the reference matrix for n=" << n << " d=" << d
                      << "\n";
            return kExitMismatch;
        }
        std::cout << "diffusion n=" << n << " d=" << d << ": matches up to global phase\n";
    }
    return kExitOk;
}

int cmd_verify(const VerifyArgs &args) {
    if (args.suite == "toffoli-table") {
        return verify_toffoli_table(args);
    }
    if (args.suite == "equivalence") {
        return verify_equivalence_suite();
    }
    if (args.suite == "diffusion") {
        return verify_diffusion_suite();
    }
    std::cerr << "unknown suite '" << args.suite << "'\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qudit circuit simulator: log-depth multi-controlled gates, d-ary search, leakage noise"};
    app.require_subcommand(1);

    DecomposeArgs dec_args;
    CLI::App *dec = app.add_subcommand("decompose", "Decompose an n-wire multi-controlled increment");
    dec->add_option("--n", dec_args.n, "total wire count (controls + target)")->required();
    dec->add_option("--d", dec_args.d, "logical dimension")->required();
    dec->add_flag("--optimize", dec_args.optimize, "cancel adjacent inverse pairs");
    dec->add_option("--out", dec_args.out_path, "output .qdc path")->required();

    SimulateArgs sim_args;
    CLI::App *sim = app.add_subcommand("simulate", "Run a .qdc circuit on a basis input");
    sim->add_option("circuit", sim_args.circuit_path, ".qdc file")->required();
    sim->add_option("--input", sim_args.input, "input digit string")->required();
    sim->add_flag("--trace", sim_args.trace, "print the state after every op");

    GroverArgs gro_args;
    int gro_iterations = -1;
    CLI::App *gro = app.add_subcommand("grover", "Run d-ary search for a marked element");
    gro->add_option("--n", gro_args.n, "wire count")->required();
    gro->add_option("--d", gro_args.d, "logical dimension")->required();
    gro->add_option("--marked", gro_args.marked, "marked digit string")->required();
    gro->add_option("--iterations", gro_iterations, "override the iteration count");
    gro->add_flag("--json", gro_args.as_json, "emit the result as JSON");

    LeakageArgs leak_args;
    CLI::App *leak = app.add_subcommand("leakage", "Sweep search success under a leakage model");
    leak->add_option("--model", leak_args.model, "unitary | erasure")
        ->check(CLI::IsMember({"unitary", "erasure"}));
    leak->add_option("--d", leak_args.d, "logical dimension")->required();
    leak->add_option("--n-min", leak_args.n_min, "first wire count")->required();
    leak->add_option("--n-max", leak_args.n_max, "last wire count")->required();
    leak->add_option("--p-l", leak_args.p_l, "per-opportunity leak probability");
    leak->add_option("--t", leak_args.t, "coupling duration (unitary model)");
    leak->add_option("--trials", leak_args.trials, "Monte Carlo trajectories per row");
    leak->add_option("--seed", leak_args.seed, "RNG seed");
    leak->add_option("--leak-level", leak_args.leak_level, "leak target level: d | d+1")
        ->check(CLI::IsMember({"d", "d+1"}));
    leak->add_option("--out", leak_args.out_path, "CSV output path (stdout when omitted)");

    VerifyArgs ver_args;
    CLI::App *ver = app.add_subcommand("verify", "Self-check suites");
    ver->add_option("--suite", ver_args.suite, "toffoli-table | equivalence | diffusion")
        ->required()
        ->check(CLI::IsMember({"toffoli-table", "equivalence", "diffusion"}));
    ver->add_option("--fixture", ver_args.fixture, "golden table CSV path");
    ver->add_option("--regen", ver_args.regen_path, "regenerate the golden table to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*dec) {
            return cmd_decompose(dec_args);
        }
        if (*sim) {
            return cmd_simulate(sim_args);
        }
        if (*gro) {
            if (gro->count("--iterations")) {
                gro_args.iterations = gro_iterations;
            }
            return cmd_grover(gro_args);
        }
        if (*leak) {
            return cmd_leakage(leak_args);
        }
        if (*ver) {
            return cmd_verify(ver_args);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
