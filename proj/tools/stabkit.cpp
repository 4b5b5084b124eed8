// stabkit: stabilizer codes, transversal gate checking, Clifford synthesis,
// simulation, fault injection, and the measurement-assisted protocols.
//
// Exit codes: 0 all requested checks passed, 1 a check failed, 2 input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stabkit/circuit.hpp"
#include "stabkit/clifford.hpp"
#include "stabkit/code.hpp"
#include "stabkit/dense_sim.hpp"
#include "stabkit/faults.hpp"
#include "stabkit/protocols.hpp"
#include "stabkit/sim.hpp"
#include "stabkit/synth.hpp"
#include "stabkit/transversal.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A code argument is either a builtin name or a .stab file path.
stabkit::StabilizerCode load_code_arg(const std::string& spec) {
    try {
        return stabkit::builtin_code(spec);
    } catch (const std::invalid_argument&) {
    }
    return stabkit::load_stab(read_file(spec)).code;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("STABKIT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw std::invalid_argument("STABKIT_SEED is not a number");
    }
    return 1;
}

// Block layout string: groups split by ';', each a comma list of 1-based
// qubit indices or 'a-b' ranges, e.g. "1-7;8-14".
std::vector<std::vector<std::size_t>> parse_blocks(const std::string& text) {
    std::vector<std::vector<std::size_t>> blocks;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<std::size_t> block;
        std::istringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::size_t lo = 0, hi = 0;
            char dash = 0;
            std::istringstream is(item);
            if (!(is >> lo)) throw std::invalid_argument("bad block item: " + item);
            if (is >> dash) {
                if (dash != '-' || !(is >> hi))
                    throw std::invalid_argument("bad block range: " + item);
            } else {
                hi = lo;
            }
            if (lo == 0 || hi < lo)
                throw std::invalid_argument("block indices are 1-based: " + item);
            for (std::size_t q = lo; q <= hi; ++q) block.push_back(q - 1);
        }
        if (!block.empty()) blocks.push_back(std::move(block));
    }
    if (blocks.empty()) throw std::invalid_argument("empty block layout");
    return blocks;
}

void print_code_info(const stabkit::StabilizerCode& c) {
    std::cout << "name: " << (c.name().empty() ? "(file)" : c.name()) << "\n";
    std::cout << "n: " << c.n() << "\n";
    std::cout << "k: " << c.k() << "\n";
    for (std::size_t i = 0; i < c.generators().size(); ++i)
        std::cout << "M" << (i + 1) << ": " << c.generators()[i].str() << "\n";
    for (std::size_t i = 0; i < c.k(); ++i)
        std::cout << "X" << (i + 1) << ": " << c.logical_x()[i].str() << "\n";
    for (std::size_t i = 0; i < c.k(); ++i)
        std::cout << "Z" << (i + 1) << ": " << c.logical_z()[i].str() << "\n";
    const bool css = stabkit::css_structure(c).has_value();
    std::cout << "css: " << (css ? "yes" : "no") << "\n";
    if (css) {
        const auto rep = stabkit::doubly_even_self_dual_check(c);
        std::cout << "self_dual: " << (rep.self_dual ? "yes" : "no") << "\n";
        std::cout << "doubly_even: " << (rep.doubly_even ? "yes" : "no") << "\n";
    }
}

int cmd_code(const std::string& sub, const std::string& spec) {
    if (sub == "validate") {
        stabkit::StabilizerCode code = load_code_arg(spec);
        const auto rep = stabkit::validate_code(code);
        if (!rep.ok()) {
            for (const auto& p : rep.problems) std::cout << "violation: " << p << "\n";
            std::cout << "valid: no\n";
            return kExitCheckFailed;
        }
        std::cout << "n: " << code.n() << "\n";
        std::cout << "k: " << code.k() << "\n";
        std::cout << "valid: yes\n";
        return kExitPass;
    }
    if (sub == "info") {
        print_code_info(load_code_arg(spec));
        return kExitPass;
    }
    // distance
    std::cout << "distance: " << stabkit::distance(load_code_arg(spec)) << "\n";
    return kExitPass;
}

// The gate argument is a named gate, a .gate file, a builtin permutation
// name (eight-qubit code), or an explicit 1-based "perm:2,1,..." list.
stabkit::TransversalCandidate load_candidate(const stabkit::StabilizerCode& code,
                                             const std::string& arg) {
    for (const auto& cand : stabkit::eight_qubit_permutations())
        if (cand.name == arg) {
            if (code.n() != 8)
                throw std::invalid_argument("permutation " + arg + " needs an 8-qubit code");
            return cand;
        }
    if (arg.rfind("perm:", 0) == 0) {
        std::vector<std::size_t> perm;
        std::istringstream is(arg.substr(5));
        std::string item;
        while (std::getline(is, item, ','))
            perm.push_back(static_cast<std::size_t>(std::stoull(item)) - 1);
        return stabkit::permutation_candidate(perm, arg);
    }
    try {
        return stabkit::bitwise_candidate(arg);
    } catch (const std::invalid_argument&) {
    }
    return stabkit::bitwise_candidate(stabkit::parse_gate(read_file(arg)), arg);
}

int cmd_transversal(const std::string& spec, const std::string& gate_arg, std::size_t blocks,
                    bool sweep) {
    const stabkit::StabilizerCode code = load_code_arg(spec);
    if (sweep) {
        const auto results = stabkit::search_single_qubit_transversal(code);
        std::cout << "code: " << spec << "\n";
        std::cout << "valid: " << results.size() << "\n";
        for (const auto& r : results) {
            std::cout << "gate " << r.name << ":";
            for (std::size_t j = 0; j < r.verdict.logical->size(); ++j)
                std::cout << " X" << (j + 1) << "->" << r.verdict.logical->x_image(j).str()
                          << " Z" << (j + 1) << "->" << r.verdict.logical->z_image(j).str();
            std::cout << "\n";
        }
        return kExitPass;
    }
    if (gate_arg.empty()) throw std::invalid_argument("missing gate argument");
    const stabkit::TransversalCandidate cand = load_candidate(code, gate_arg);
    if (blocks != 0 && blocks != cand.blocks)
        throw std::invalid_argument("--blocks disagrees with the gate's arity");
    const auto verdict = stabkit::check_transversal(code, cand);
    std::cout << "code: " << spec << "\n";
    std::cout << "gate: " << cand.name << "\n";
    std::cout << "blocks: " << cand.blocks << "\n";
    if (!verdict.valid) {
        std::cout << "verdict: invalid\n";
        std::cout << "witness: M" << (verdict.witness->generator + 1) << " in block "
                  << (verdict.witness->block + 1) << "\n";
        std::cout << "reason: " << verdict.witness->reason << "\n";
        return kExitCheckFailed;
    }
    std::cout << "verdict: valid\n";
    std::cout << "logical:\n" << stabkit::format_gate(*verdict.logical);
    return kExitPass;
}

int cmd_synth(const std::string& path) {
    const stabkit::CliffordMap target = stabkit::parse_gate(read_file(path));
    const stabkit::Circuit circ = stabkit::synthesize(target);
    if (!(stabkit::circuit_to_map(circ) == target)) {
        std::cout << "replay: mismatch\n";
        return kExitCheckFailed;
    }
    std::cout << stabkit::format_circ(circ);
    return kExitPass;
}

int cmd_sim(const std::string& path, std::uint64_t seed, bool oracle, std::size_t max_n) {
    const stabkit::Circuit circ = stabkit::parse_circ(read_file(path));
    const std::size_t guard = max_n != 0 ? max_n : (oracle ? stabkit::kDenseQubitGuard : 64);
    if (circ.qubits() > guard)
        throw std::invalid_argument("circuit has " + std::to_string(circ.qubits()) +
                                    " qubits, over the --max-n guard of " +
                                    std::to_string(guard));
    std::cout << "qubits: " << circ.qubits() << "\n";
    std::cout << "seed: " << seed << "\n";
    std::mt19937_64 rng(seed);
    const auto run =
        stabkit::run_tableau(circ, stabkit::StabilizerState::zero_state(circ.qubits()), rng);
    for (std::size_t i = 0; i < run.records.size(); ++i) {
        const auto& r = run.records[i];
        std::cout << "measurement " << (i + 1) << ": " << (r.outcome > 0 ? "+1" : "-1") << " "
                  << (r.deterministic ? "deterministic" : "random")
                  << (r.corrected ? " corrected" : "") << "\n";
    }
    for (std::size_t b = 0; b < run.bits.size(); ++b)
        std::cout << "b" << b << ": " << (run.bits[b] ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < run.state.generators().size(); ++i)
        std::cout << "S" << (i + 1) << ": " << run.state.generators()[i].str() << "\n";
    if (oracle) {
        const auto check = stabkit::crosscheck_circuit(
            circ, stabkit::StabilizerState::zero_state(circ.qubits()), seed);
        std::cout << "oracle: " << (check.ok ? "agree" : "MISMATCH") << "\n";
        std::cout << "fidelity: " << check.fidelity << "\n";
        if (!check.ok) {
            std::cout << "note: " << check.note << "\n";
            return kExitCheckFailed;
        }
    }
    return kExitPass;
}

int cmd_faults(const std::string& path, const std::string& layout,
               const std::optional<std::string>& code_spec) {
    const stabkit::Circuit circ = stabkit::parse_circ(read_file(path));
    const auto blocks = parse_blocks(layout);
    std::optional<stabkit::StabilizerCode> code;
    if (code_spec) code = load_code_arg(*code_spec);
    const auto report = stabkit::fault_injection(circ, blocks, code);
    std::cout << "locations: " << report.locations << "\n";
    std::cout << "cases: " << report.cases.size() << "\n";
    for (const auto& fc : report.cases) {
        std::cout << "location " << (fc.location + 1) << " fault " << fc.injected.str()
                  << " final " << fc.final_error.str() << " raw";
        for (std::size_t w : fc.raw_weight) std::cout << " " << w;
        std::cout << " reduced";
        for (std::size_t w : fc.reduced_weight) std::cout << " " << w;
        if (fc.violation) std::cout << " VIOLATION";
        std::cout << "\n";
    }
    std::cout << "violation: " << (report.violation ? "found" : "none") << "\n";
    return report.violation ? kExitCheckFailed : kExitPass;
}

stabkit::ProtocolParams protocol_params(const std::optional<std::string>& code_spec,
                                        std::size_t i, std::size_t j) {
    stabkit::ProtocolParams params;
    if (code_spec) params.code = load_code_arg(*code_spec);
    params.i = i;
    params.j = j;
    return params;
}

int cmd_protocol_run(const std::string& name, const stabkit::ProtocolParams& params,
                     std::uint64_t seed) {
    const auto result = stabkit::run_protocol(name, params, seed);
    std::cout << "protocol: " << result.name << "\n";
    std::cout << "seed: " << seed << "\n";
    std::cout << "method: " << result.method << "\n";
    for (const auto& row : result.logical_rows) std::cout << "logical: " << row << "\n";
    if (!result.note.empty()) std::cout << "note: " << result.note << "\n";
    std::cout << "result: " << (result.pass ? "pass" : "FAIL") << "\n";
    return result.pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer code toolkit"};
    app.require_subcommand(1);
    std::size_t max_n = 0;
    app.add_option("--max-n", max_n, "size guard; default 10 dense, 64 tableau");

    // code validate|info|distance <spec>
    auto* code_cmd = app.add_subcommand("code", "inspect or validate a code");
    std::string code_sub, code_spec;
    code_cmd->add_option("subcommand", code_sub, "validate | info | distance")
        ->required()
        ->check(CLI::IsMember({"validate", "info", "distance"}));
    code_cmd->add_option("spec", code_spec, "builtin name or .stab file")->required();

    // transversal <spec> <gate> [--blocks m] [--sweep]
    auto* tr_cmd = app.add_subcommand("transversal", "check a transversal candidate");
    std::string tr_spec, tr_gate;
    std::size_t tr_blocks = 0;
    bool tr_sweep = false;
    tr_cmd->add_option("spec", tr_spec, "builtin name or .stab file")->required();
    tr_cmd->add_option("gate", tr_gate, "named gate, .gate file, or permutation");
    tr_cmd->add_option("--blocks", tr_blocks, "expected block count");
    tr_cmd->add_flag("--sweep", tr_sweep, "sweep the 24 single-qubit maps");

    // synth <.gate>
    auto* synth_cmd = app.add_subcommand("synth", "synthesize a circuit for a .gate file");
    std::string synth_path;
    synth_cmd->add_option("gate", synth_path, ".gate file")->required();

    // sim <.circ> [--seed s] [--oracle]
    auto* sim_cmd = app.add_subcommand("sim", "run a circuit on the tableau simulator");
    std::string sim_path;
    std::uint64_t sim_seed = 0;
    bool sim_seed_given = false, sim_oracle = false;
    sim_cmd->add_option("circ", sim_path, ".circ file")->required();
    sim_cmd->add_option("--seed", sim_seed, "measurement coin seed")
        ->each([&](const std::string&) { sim_seed_given = true; });
    sim_cmd->add_flag("--oracle", sim_oracle, "cross-check against the dense simulator");

    // faults <.circ> --blocks "1-7;8-14" [--code spec]
    auto* faults_cmd = app.add_subcommand("faults", "single-fault propagation analysis");
    std::string faults_path, faults_layout;
    std::optional<std::string> faults_code;
    faults_cmd->add_option("circ", faults_path, ".circ file")->required();
    faults_cmd->add_option("--blocks", faults_layout, "block layout, e.g. \"1-7;8-14\"")
        ->required();
    faults_cmd->add_option("--code", faults_code, "code for coset-reduced weights");

    // protocol list | run <name> | dump <name>
    auto* proto_cmd = app.add_subcommand("protocol", "measurement-assisted gate protocols");
    std::string proto_sub, proto_name;
    std::uint64_t proto_seed = 0;
    bool proto_seed_given = false;
    std::optional<std::string> proto_code;
    std::size_t proto_i = 1, proto_j = 2;
    proto_cmd->add_option("subcommand", proto_sub, "list | run | dump")
        ->required()
        ->check(CLI::IsMember({"list", "run", "dump"}));
    proto_cmd->add_option("name", proto_name, "protocol name");
    proto_cmd->add_option("--seed", proto_seed, "verification seed")
        ->each([&](const std::string&) { proto_seed_given = true; });
    proto_cmd->add_option("--code", proto_code, "code for encoded variants");
    proto_cmd->add_option("--i", proto_i, "first encoded slot (1-based)");
    proto_cmd->add_option("--j", proto_j, "second encoded slot (1-based)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (code_cmd->parsed()) return cmd_code(code_sub, code_spec);
        if (tr_cmd->parsed()) return cmd_transversal(tr_spec, tr_gate, tr_blocks, tr_sweep);
        if (synth_cmd->parsed()) return cmd_synth(synth_path);
        if (sim_cmd->parsed())
            return cmd_sim(sim_path, sim_seed_given ? sim_seed : default_seed(), sim_oracle,
                           max_n);
        if (faults_cmd->parsed()) return cmd_faults(faults_path, faults_layout, faults_code);
        if (proto_cmd->parsed()) {
            if (proto_sub == "list") {
                for (const auto& entry : stabkit::protocol_registry())
                    std::cout << entry.first << ": " << entry.second << "\n";
                return kExitPass;
            }
            if (proto_name.empty()) throw std::invalid_argument("missing protocol name");
            const auto params = protocol_params(proto_code, proto_i, proto_j);
            if (proto_sub == "dump") {
                std::cout << stabkit::format_circ(stabkit::make_protocol(proto_name, params).circuit);
                return kExitPass;
            }
            return cmd_protocol_run(proto_name, params,
                                    proto_seed_given ? proto_seed : default_seed());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
