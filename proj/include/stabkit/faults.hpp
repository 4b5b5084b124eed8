#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "stabkit/circuit.hpp"
#include "stabkit/clifford.hpp"
#include "stabkit/code.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

// One injected fault and where it ends up.  Weights are per block, in the
// order the block layout was given; a fault is counted at the location's
// support immediately after the step acts, then pushed through the rest of
// the circuit.
struct FaultCase {
    std::size_t location = 0;
    PauliOperator injected;
    PauliOperator final_error;
    std::vector<std::size_t> raw_weight;
    std::vector<std::size_t> reduced_weight;
    bool violation = false;
};

struct FaultReport {
    std::vector<FaultCase> cases;
    std::size_t locations = 0;
    bool violation = false;
};

namespace detail {

inline std::size_t block_weight(const PauliOperator& p, const std::vector<std::size_t>& block) {
    std::size_t w = 0;
    for (std::size_t q : block)
        if (p.x_bit(q) || p.z_bit(q)) ++w;
    return w;
}

// Minimum weight of p restricted to the block over the coset p * <generators
// restricted to the block>.  Exact enumeration over all 2^r products, walked
// in Gray-code order so each step is a single multiplication.
inline std::size_t reduced_block_weight(const PauliOperator& p,
                                        const std::vector<std::size_t>& block,
                                        const StabilizerCode& code) {
    PauliOperator local(block.size());
    for (std::size_t k = 0; k < block.size(); ++k) local.set_letter(k, p.letter(block[k]));
    std::size_t best = local.weight();
    const auto& gens = code.generators();
    const std::uint64_t total = std::uint64_t{1} << gens.size();
    PauliOperator cur = local;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        std::uint64_t prev = (i - 1) ^ ((i - 1) >> 1);
        std::size_t flip = 0;
        std::uint64_t diff = gray ^ prev;
        while (!(diff & 1)) {
            diff >>= 1;
            ++flip;
        }
        cur = cur * gens[flip];
        best = std::min(best, cur.weight());
    }
    return best;
}

}  // namespace detail

// Push every single-location Pauli fault through the tail of the circuit and
// report its final per-block weight.  A fault is modeled as the step acting
// perfectly followed by a Pauli error on the step's support; measurement
// corrections and classically controlled Pauli gates are absorbed into the
// propagating frame (an anticommuting fault flips the recorded bit, so the
// faulty run applies the conditional operator where the clean run does not,
// or vice versa; the difference multiplies into the frame).
//
// blocks: disjoint qubit index sets; qubits outside every block (bare
// ancillas) contribute to no weight.  When a code is given, blocks whose size
// matches code.n also get a coset-reduced weight (minimum weight of the error
// times any stabilizer element of that block); otherwise the reduced weight
// equals the raw weight.  The violation flag fires on raw weight >= 2 inside
// a single block.
inline FaultReport fault_injection(const Circuit& circuit,
                                   const std::vector<std::vector<std::size_t>>& blocks,
                                   const std::optional<StabilizerCode>& code = std::nullopt) {
    const std::size_t n = circuit.qubits();
    std::vector<bool> seen(n, false);
    for (const auto& block : blocks)
        for (std::size_t q : block) {
            if (q >= n) throw std::invalid_argument("fault_injection: block qubit out of range");
            if (seen[q]) throw std::invalid_argument("fault_injection: blocks overlap");
            seen[q] = true;
        }
    if (code && code->n() > 10)
        throw std::invalid_argument("fault_injection: coset reduction guard is n <= 10");

    const auto& steps = circuit.steps();
    for (const auto& step : steps) {
        if (const auto* c = std::get_if<ControlledStep>(&step)) {
            const std::string& g = c->gate.name;
            if (g != "X" && g != "Y" && g != "Z")
                throw std::invalid_argument(
                    "fault_injection: classically controlled gates must be Pauli");
        }
    }

    // Embedded conjugation map per gate-bearing step, and the Pauli pattern
    // of each controlled gate.
    std::vector<std::optional<CliffordMap>> step_map(steps.size());
    std::vector<std::optional<PauliOperator>> step_pauli(steps.size());
    std::vector<std::size_t> locations;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        if (const auto* g = std::get_if<GateStep>(&steps[s])) {
            step_map[s] = named_gate(g->name).embedded(n, g->targets);
            locations.push_back(s);
        } else if (const auto* c = std::get_if<ControlledStep>(&steps[s])) {
            step_map[s] = named_gate(c->gate.name).embedded(n, c->gate.targets);
            PauliOperator p(n);
            p.set_letter(c->gate.targets[0], c->gate.name[0]);
            p.set_phase(c->gate.name[0] == 'Y' ? 1 : 0);
            step_pauli[s] = p;
            locations.push_back(s);
        }
    }

    FaultReport report;
    report.locations = locations.size();
    const std::size_t bits = circuit.classical_bits();

    for (std::size_t loc : locations) {
        const auto& support = std::holds_alternative<GateStep>(steps[loc])
                                  ? std::get<GateStep>(steps[loc]).targets
                                  : std::get<ControlledStep>(steps[loc]).gate.targets;
        const std::size_t k = support.size();
        const std::uint64_t faults = (std::uint64_t{1} << (2 * k)) - 1;
        for (std::uint64_t v = 1; v <= faults; ++v) {
            PauliOperator f(n);
            std::uint64_t digits = v;
            for (std::size_t j = 0; j < k; ++j) {
                f.set_letter(support[j], "IXZY"[digits & 3]);
                digits >>= 2;
            }
            f.set_phase(f.y_count() & 3u);
            FaultCase fc;
            fc.location = loc;
            fc.injected = f;

            std::vector<bool> flips(bits, false);
            for (std::size_t s = loc + 1; s < steps.size(); ++s) {
                if (const auto* m = std::get_if<MeasureStep>(&steps[s])) {
                    if (!f.commutes_with(m->observable)) {
                        flips[m->bit] = !flips[m->bit];
                        if (m->correction) f = f * *m->correction;
                    }
                } else if (const auto* c = std::get_if<ControlledStep>(&steps[s])) {
                    if (flips[c->bit]) f = f * *step_pauli[s];
                    // The gate itself conjugates the frame in both runs only
                    // when it actually fires; firing differs exactly when the
                    // bit flipped, and a Pauli gate's conjugation changes f
                    // by a sign at most, so the pattern is map-invariant.
                    f = step_map[s]->apply(f);
                } else {
                    f = step_map[s]->apply(f);
                }
            }
            f.set_phase(f.y_count() & 3u);
            fc.final_error = f;

            for (const auto& block : blocks) {
                std::size_t raw = detail::block_weight(f, block);
                fc.raw_weight.push_back(raw);
                std::size_t reduced = raw;
                if (code && block.size() == code->n())
                    reduced = detail::reduced_block_weight(f, block, *code);
                fc.reduced_weight.push_back(reduced);
                if (raw >= 2) fc.violation = true;
            }
            if (fc.violation) report.violation = true;
            report.cases.push_back(std::move(fc));
        }
    }
    return report;
}

}  // namespace stabkit
