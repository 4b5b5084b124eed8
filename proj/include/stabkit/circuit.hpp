#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stabkit/clifford.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

struct GateStep {
    std::string name;
    std::vector<std::size_t> targets;
};

struct MeasureStep {
    PauliOperator observable;
    std::optional<PauliOperator> correction;
    std::size_t bit = 0;
};

// IF b<k> GATE <name> <targets>: apply the gate when the bit is set.
struct ControlledStep {
    std::size_t bit = 0;
    GateStep gate;
};

using CircuitStep = std::variant<GateStep, MeasureStep, ControlledStep>;

class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::size_t qubits) : qubits_(qubits) {}

    std::size_t qubits() const { return qubits_; }
    const std::vector<CircuitStep>& steps() const { return steps_; }

    std::size_t classical_bits() const {
        std::size_t count = 0;
        for (const auto& step : steps_) {
            if (const auto* m = std::get_if<MeasureStep>(&step))
                count = std::max(count, m->bit + 1);
            else if (const auto* c = std::get_if<ControlledStep>(&step))
                count = std::max(count, c->bit + 1);
        }
        return count;
    }

    void append_gate(std::string_view name, std::vector<std::size_t> targets) {
        steps_.push_back(GateStep{checked_gate(name, targets), std::move(targets)});
    }

    void append_measure(PauliOperator observable, std::optional<PauliOperator> correction,
                        std::size_t bit) {
        if (observable.size() != qubits_)
            throw std::invalid_argument("circuit: observable length mismatch");
        if (!observable.hermitian())
            throw std::invalid_argument("circuit: measured operator must square to +I");
        if (correction) {
            if (correction->size() != qubits_)
                throw std::invalid_argument("circuit: correction length mismatch");
            if (correction->commutes_with(observable))
                throw std::invalid_argument(
                    "circuit: correction must anticommute with the measured operator");
        }
        steps_.push_back(MeasureStep{std::move(observable), std::move(correction), bit});
    }

    void append_controlled(std::size_t bit, std::string_view name,
                           std::vector<std::size_t> targets) {
        ControlledStep step{bit, GateStep{checked_gate(name, targets), {}}};
        step.gate.targets = std::move(targets);
        steps_.push_back(std::move(step));
    }

private:
    std::string checked_gate(std::string_view name, const std::vector<std::size_t>& targets) {
        std::string canon = detail::canonical_gate_name(name);
        if (!is_gate_name(canon))
            throw std::invalid_argument("circuit: unknown gate '" + std::string(name) + "'");
        if (gate_arity(canon) != targets.size())
            throw std::invalid_argument("circuit: gate '" + canon + "' arity mismatch");
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (targets[i] >= qubits_)
                throw std::invalid_argument("circuit: target out of range");
            for (std::size_t j = i + 1; j < targets.size(); ++j)
                if (targets[i] == targets[j])
                    throw std::invalid_argument("circuit: repeated target");
        }
        return canon;
    }

    std::size_t qubits_ = 0;
    std::vector<CircuitStep> steps_;
};

// .circ format: `qubits <n>` header, then one step per line:
//   GATE <name> <targets...>            (1-based targets)
//   MEASURE <pauli> [CORRECT <pauli>] -> b<k>
//   IF b<k> GATE <name> <targets...>
// `#` starts a comment.
inline Circuit parse_circ(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<Circuit> circuit;

    auto fail = [&lineno](const std::string& msg) {
        std::ostringstream os;
        os << "circ parse error at line " << lineno << ": " << msg;
        throw std::invalid_argument(os.str());
    };

    auto parse_bit = [&](const std::string& tok) -> std::size_t {
        if (tok.size() < 2 || tok[0] != 'b') fail("expected bit name 'b<k>'");
        std::size_t v = 0;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9') fail("expected bit name 'b<k>'");
            v = v * 10 + static_cast<std::size_t>(tok[i] - '0');
        }
        return v;
    };

    auto parse_targets = [&](std::istringstream& ls) {
        std::vector<std::size_t> targets;
        std::string tok;
        while (ls >> tok) {
            std::size_t v = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9') fail("bad target '" + tok + "'");
                v = v * 10 + static_cast<std::size_t>(ch - '0');
            }
            if (v == 0) fail("targets are 1-based");
            targets.push_back(v - 1);
        }
        return targets;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (!circuit) {
            if (tok != "qubits") fail("expected 'qubits <n>' header");
            std::size_t n = 0;
            if (!(ls >> n) || n == 0) fail("bad qubit count");
            circuit.emplace(n);
            continue;
        }

        try {
            if (tok == "GATE") {
                std::string name;
                if (!(ls >> name)) fail("missing gate name");
                circuit->append_gate(name, parse_targets(ls));
            } else if (tok == "MEASURE") {
                std::string pauli;
                if (!(ls >> pauli)) fail("missing measured operator");
                std::optional<PauliOperator> correction;
                std::string next;
                if (!(ls >> next)) fail("missing '-> b<k>'");
                if (next == "CORRECT") {
                    std::string cp;
                    if (!(ls >> cp)) fail("missing correction operator");
                    correction = PauliOperator::parse(cp);
                    if (!(ls >> next)) fail("missing '-> b<k>'");
                }
                if (next != "->") fail("expected '->'");
                std::string bit;
                if (!(ls >> bit)) fail("missing bit name");
                std::string extra;
                if (ls >> extra) fail("trailing text");
                circuit->append_measure(PauliOperator::parse(pauli), std::move(correction),
                                        parse_bit(bit));
            } else if (tok == "IF") {
                std::string bit, kw, name;
                if (!(ls >> bit >> kw >> name) || kw != "GATE")
                    fail("expected 'IF b<k> GATE <name> <targets>'");
                circuit->append_controlled(parse_bit(bit), name, parse_targets(ls));
            } else {
                fail("unknown step '" + tok + "'");
            }
        } catch (const std::invalid_argument& e) {
            const std::string_view what = e.what();
            if (what.substr(0, 4) == "circ") throw;
            fail(e.what());
        }
    }
    if (!circuit) throw std::invalid_argument("circ parse error: missing 'qubits' header");
    return *circuit;
}

inline std::string format_circ(const Circuit& c) {
    std::ostringstream os;
    os << "qubits " << c.qubits() << "\n";
    auto targets = [&os](const std::vector<std::size_t>& ts) {
        for (std::size_t t : ts) os << " " << (t + 1);
    };
    for (const auto& step : c.steps()) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            os << "GATE " << g->name;
            targets(g->targets);
        } else if (const auto* m = std::get_if<MeasureStep>(&step)) {
            os << "MEASURE " << m->observable.str();
            if (m->correction) os << " CORRECT " << m->correction->str();
            os << " -> b" << m->bit;
        } else {
            const auto& ctl = std::get<ControlledStep>(step);
            os << "IF b" << ctl.bit << " GATE " << ctl.gate.name;
            targets(ctl.gate.targets);
        }
        os << "\n";
    }
    return os.str();
}

// Compose all gate steps into one CliffordMap; measurement and conditional
// steps have no single-map equivalent and are rejected.
inline CliffordMap circuit_to_map(const Circuit& c) {
    CliffordMap total = CliffordMap::identity(c.qubits());
    for (const auto& step : c.steps()) {
        const auto* g = std::get_if<GateStep>(&step);
        if (!g)
            throw std::invalid_argument(
                "circuit_to_map: circuit contains non-unitary steps");
        total = compose(named_gate(g->name).embedded(c.qubits(), g->targets), total);
    }
    return total;
}

}  // namespace stabkit
