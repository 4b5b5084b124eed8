#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stabkit/circuit.hpp"
#include "stabkit/sim.hpp"
#include "stabkit/unitary.hpp"

namespace stabkit {

inline constexpr double kProbabilityTol = 1e-9;

namespace detail {

inline const DenseMatrix& dense_gate_matrix(const std::string& name) {
    static std::map<std::string, DenseMatrix> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, to_unitary(named_gate(name))).first;
    return it->second;
}

}  // namespace detail

struct DenseMeasurement {
    double p_plus = 0.0;
    int outcome = 0;
    bool deterministic = false;
    bool corrected = false;
};

struct DenseRun {
    std::vector<cplx> state;
    std::vector<DenseMeasurement> records;
    std::vector<bool> bits;
};

// State-vector reference runner.  Measurement probabilities must come out
// 0, 1/2, or 1 (up to kProbabilityTol); anything else means the circuit or
// the input state is not a stabilizer configuration.  Coin flips consume
// exactly one rng() & 1 draw per random measurement, matching run_tableau.
inline DenseRun run_dense(const Circuit& c, std::vector<cplx> psi, std::mt19937_64& rng) {
    const std::size_t n = c.qubits();
    if (n > kDenseQubitGuard) throw std::invalid_argument("dense: too many qubits");
    if (psi.size() != (std::size_t{1} << n)) throw std::invalid_argument("dense: state size");

    DenseRun run{std::move(psi), {}, std::vector<bool>(c.classical_bits(), false)};
    for (const auto& step : c.steps()) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            apply_dense_gate(run.state, detail::dense_gate_matrix(g->name), g->targets, n);
        } else if (const auto* ctl = std::get_if<ControlledStep>(&step)) {
            if (run.bits[ctl->bit])
                apply_dense_gate(run.state, detail::dense_gate_matrix(ctl->gate.name),
                                 ctl->gate.targets, n);
        } else {
            const auto& m = std::get<MeasureStep>(step);
            std::vector<cplx> a_psi = run.state;
            apply_pauli(a_psi, m.observable);
            const double expect = inner(run.state, a_psi).real();
            const double p_plus = (1.0 + expect) / 2.0;

            DenseMeasurement rec;
            rec.p_plus = p_plus;
            if (p_plus >= 1.0 - kProbabilityTol) {
                rec.outcome = +1;
                rec.deterministic = true;
            } else if (p_plus <= kProbabilityTol) {
                rec.outcome = -1;
                rec.deterministic = true;
            } else if (std::abs(p_plus - 0.5) <= kProbabilityTol) {
                rec.outcome = (rng() & 1u) ? -1 : +1;
            } else {
                std::ostringstream os;
                os << "dense: measurement probability " << p_plus
                   << " is not 0, 1/2, or 1";
                throw std::invalid_argument(os.str());
            }
            const double s = rec.outcome;
            for (std::size_t i = 0; i < run.state.size(); ++i)
                run.state[i] = (run.state[i] + s * a_psi[i]) / 2.0;
            const double norm = vec_norm(run.state);
            for (auto& amp : run.state) amp /= norm;
            if (rec.outcome < 0 && m.correction) {
                apply_pauli(run.state, *m.correction);
                rec.corrected = true;
            }
            run.bits[m.bit] = rec.outcome < 0;
            run.records.push_back(rec);
        }
    }
    return run;
}

struct CrossCheckResult {
    bool ok = false;
    double fidelity = 0.0;
    std::size_t measurements = 0;
    std::string note;
};

// Run the circuit through both the tableau simulator and the dense oracle
// with identical coin streams, then compare classification, outcomes, and
// the final state (tableau state reconstructed densely; fidelity ignores
// global phase).
inline CrossCheckResult crosscheck_circuit(const Circuit& c, const StabilizerState& initial,
                                           std::uint64_t seed) {
    std::mt19937_64 tableau_rng(seed);
    std::mt19937_64 dense_rng(seed);

    TableauRun t = run_tableau(c, initial, tableau_rng);
    DenseRun d = run_dense(c, stabilized_state(initial.generators(), initial.n()), dense_rng);

    CrossCheckResult result;
    result.measurements = t.records.size();
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        if (t.records[i].deterministic != d.records[i].deterministic) {
            std::ostringstream os;
            os << "measurement " << i << ": classification mismatch (tableau "
               << (t.records[i].deterministic ? "deterministic" : "coin") << ", dense p+ = "
               << d.records[i].p_plus << ")";
            result.note = os.str();
            return result;
        }
        if (t.records[i].outcome != d.records[i].outcome) {
            std::ostringstream os;
            os << "measurement " << i << ": outcome mismatch";
            result.note = os.str();
            return result;
        }
    }
    const std::vector<cplx> recon = stabilized_state(t.state.generators(), t.state.n());
    result.fidelity = std::abs(inner(recon, d.state));
    if (result.fidelity <= 1.0 - 1e-10) {
        std::ostringstream os;
        os << "final state fidelity " << result.fidelity;
        result.note = os.str();
        return result;
    }
    result.ok = true;
    return result;
}

// Random Clifford+measurement circuit for simulator cross-checks: gates
// drawn from the named single- and two-qubit set, measurements are random
// Hermitian Paulis, and roughly a third of them carry a random
// anticommuting correction.
inline Circuit random_stabilizer_circuit(std::size_t n, std::size_t gate_count,
                                         std::size_t measure_count, std::uint64_t seed) {
    static const char* one_q[] = {"X", "Y", "Z", "R", "P", "PDG", "Q", "QDG", "T", "T2"};
    static const char* two_q[] = {"CNOT", "CZ", "SWAP"};
    std::mt19937_64 eng(seed ^ 0xd1b54a32d192ed03ull);
    Circuit c(n);

    auto random_pauli = [&](bool nontrivial) {
        PauliOperator p = PauliOperator::identity(n);
        do {
            for (std::size_t q = 0; q < n; ++q) {
                const unsigned v = eng() & 3u;
                p.set_letter(q, "IXZY"[v]);
            }
        } while (nontrivial && p.pattern_trivial());
        p.set_phase((p.y_count() + 2u * (eng() & 1u)) & 3u);
        return p;
    };

    std::size_t gates_left = gate_count, measures_left = measure_count;
    std::size_t bit = 0;
    while (gates_left + measures_left > 0) {
        const bool pick_gate =
            measures_left == 0 ||
            (gates_left > 0 && eng() % (gates_left + measures_left) < gates_left);
        if (pick_gate) {
            --gates_left;
            if (n >= 2 && (eng() & 1u)) {
                const std::size_t a = eng() % n;
                std::size_t b = eng() % (n - 1);
                if (b >= a) ++b;
                c.append_gate(two_q[eng() % 3u], {a, b});
            } else {
                c.append_gate(one_q[eng() % 10u], {eng() % n});
            }
        } else {
            --measures_left;
            PauliOperator obs = random_pauli(true);
            std::optional<PauliOperator> correction;
            if (eng() % 3u == 0) {
                for (int tries = 0; tries < 64; ++tries) {
                    PauliOperator cand = random_pauli(true);
                    if (!cand.commutes_with(obs)) {
                        correction = std::move(cand);
                        break;
                    }
                }
            }
            c.append_measure(std::move(obs), std::move(correction), bit++);
        }
    }
    return c;
}

}  // namespace stabkit
