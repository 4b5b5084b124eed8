#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stabkit/bitvec.hpp"
#include "stabkit/circuit.hpp"
#include "stabkit/clifford.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/group.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

struct MeasurementRecord {
    int outcome = 0;  // +1 or -1, as measured (before any correction)
    bool deterministic = false;
    bool corrected = false;
};

namespace detail {

// Shared measurement mechanics for full-rank states and partial-rank frames.
//
// Collapse convention, given pivot = first generator anticommuting with the
// measured operator a:
//   * every other anticommuting generator (and tracked operator) is
//     left-multiplied by the signed pre-measurement pivot,
//   * the pivot row is replaced by (-1)^outcome_minus * a.
inline void collapse_rows(std::vector<PauliOperator>& rows, const PauliOperator& pivot_value,
                          const PauliOperator& a) {
    for (auto& r : rows)
        if (!r.commutes_with(a)) r = pivot_value * r;
}

inline void conjugate_rows(std::vector<PauliOperator>& rows, const PauliOperator& c) {
    for (auto& r : rows)
        if (!r.commutes_with(c)) r.set_phase(r.phase() + 2u);
}

}  // namespace detail

// Pure stabilizer state on n qubits: n commuting Hermitian generators of
// full symplectic rank.
class StabilizerState {
public:
    static StabilizerState basis_state(const BitVec& bits) {
        const std::size_t n = bits.size();
        std::vector<PauliOperator> gens;
        gens.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            PauliOperator g = PauliOperator::identity(n);
            g.set_letter(j, 'Z');
            if (bits.get(j)) g.set_phase(2);
            gens.push_back(std::move(g));
        }
        return StabilizerState(n, std::move(gens));
    }

    static StabilizerState zero_state(std::size_t n) { return basis_state(BitVec(n)); }

    static StabilizerState from_generators(std::vector<PauliOperator> gens) {
        if (gens.empty()) throw std::invalid_argument("state: no generators");
        const std::size_t n = gens[0].size();
        if (gens.size() != n) throw std::invalid_argument("state: need n generators");
        Gf2Basis basis;
        for (std::size_t i = 0; i < n; ++i) {
            if (gens[i].size() != n) throw std::invalid_argument("state: length mismatch");
            if (!gens[i].hermitian())
                throw std::invalid_argument("state: generator must square to +I");
            for (std::size_t j = i + 1; j < n; ++j)
                if (!gens[i].commutes_with(gens[j]))
                    throw std::invalid_argument("state: generators anticommute");
            if (!basis.add(symplectic_row(gens[i])))
                throw std::invalid_argument("state: generators are dependent");
        }
        return StabilizerState(n, std::move(gens));
    }

    std::size_t n() const { return n_; }
    const std::vector<PauliOperator>& generators() const { return gens_; }

    void apply_map(const CliffordMap& c) {
        if (c.size() != n_) throw std::invalid_argument("state: map size mismatch");
        for (auto& g : gens_) g = c.apply(g);
    }

    void apply_gate(const CliffordMap& gate, const std::vector<std::size_t>& targets) {
        apply_map(gate.embedded(n_, targets));
    }

    void apply_named(std::string_view name, const std::vector<std::size_t>& targets) {
        apply_gate(named_gate(name), targets);
    }

    // Conjugate the state by a Pauli unitary (state -> c|state>).
    void apply_pauli(const PauliOperator& c) {
        if (c.size() != n_) throw std::invalid_argument("state: pauli size mismatch");
        detail::conjugate_rows(gens_, c);
    }

    MeasurementRecord measure(const PauliOperator& a, std::mt19937_64& rng) {
        if (a.size() != n_) throw std::invalid_argument("measure: size mismatch");
        if (!a.hermitian())
            throw std::invalid_argument("measure: operator must square to +I");
        std::size_t pivot = n_;
        for (std::size_t i = 0; i < n_; ++i)
            if (!gens_[i].commutes_with(a)) {
                pivot = i;
                break;
            }
        if (pivot == n_) {
            // Commutes with everything: a is fixed up to sign by the state.
            const auto phi = group_phase(gens_, a);
            if (!phi)
                throw std::logic_error("measure: commuting operator outside group");
            return MeasurementRecord{*phi == 0 ? +1 : -1, true, false};
        }
        const PauliOperator pivot_value = gens_[pivot];
        detail::collapse_rows(gens_, pivot_value, a);
        const bool minus = (rng() & 1u) != 0;
        PauliOperator replacement = a;
        if (minus) replacement.set_phase(replacement.phase() + 2u);
        gens_[pivot] = std::move(replacement);
        return MeasurementRecord{minus ? -1 : +1, false, false};
    }

    // Measure a; on outcome -1 apply the correction unitary, leaving the
    // state in the +1 eigenspace of a.  The correction must anticommute
    // with a.
    MeasurementRecord measure_and_correct(const PauliOperator& a, const PauliOperator& correction,
                                          std::mt19937_64& rng) {
        if (correction.commutes_with(a))
            throw std::invalid_argument(
                "measure: correction must anticommute with the measured operator");
        MeasurementRecord rec = measure(a, rng);
        if (rec.outcome < 0) {
            apply_pauli(correction);
            rec.corrected = true;
        }
        return rec;
    }

    // Remove an unentangled qubit.  Returns the discarded qubit's
    // single-qubit stabilizer (e.g. "-Z" when it held |1>); throws if the
    // qubit is entangled with the rest.
    PauliOperator discard_qubit(std::size_t q) {
        if (q >= n_) throw std::invalid_argument("discard: qubit out of range");
        // Combos of generators whose product is supported only on q: right
        // kernel of the matrix whose rows are the other qubits' x/z
        // coordinates across the generators.
        std::vector<BitVec> coords;
        coords.reserve(2 * (n_ - 1));
        for (std::size_t t = 0; t < n_; ++t) {
            if (t == q) continue;
            BitVec xs(n_), zs(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                if (gens_[i].x_bit(t)) xs.set(i, true);
                if (gens_[i].z_bit(t)) zs.set(i, true);
            }
            coords.push_back(std::move(xs));
            coords.push_back(std::move(zs));
        }
        const auto kernel = gf2_kernel(coords, n_);
        if (kernel.empty())
            throw std::invalid_argument("discard: qubit is entangled");
        PauliOperator local = PauliOperator::identity(n_);
        for (std::size_t i = 0; i < n_; ++i)
            if (kernel[0].get(i)) local = local * gens_[i];
        const std::size_t pivot = kernel[0].find_first();
        gens_[pivot] = local;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == pivot) continue;
            if (gens_[i].letter(q) != 'I') gens_[i] = local * gens_[i];
        }
        std::vector<PauliOperator> shrunk;
        shrunk.reserve(n_ - 1);
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == pivot) continue;
            PauliOperator g(PauliOperator::identity(n_ - 1));
            for (std::size_t t = 0, u = 0; t < n_; ++t) {
                if (t == q) continue;
                g.set_letter(u++, gens_[i].letter(t));
            }
            g.set_phase(gens_[i].phase());
            shrunk.push_back(std::move(g));
        }
        gens_ = std::move(shrunk);
        --n_;
        PauliOperator discarded(PauliOperator::identity(1));
        discarded.set_letter(0, local.letter(q));
        discarded.set_phase(local.phase());
        return discarded;
    }

    bool check_invariants() const {
        Gf2Basis basis;
        for (std::size_t i = 0; i < n_; ++i) {
            if (gens_[i].size() != n_ || !gens_[i].hermitian()) return false;
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!gens_[i].commutes_with(gens_[j])) return false;
            if (!basis.add(symplectic_row(gens_[i]))) return false;
        }
        return true;
    }

private:
    StabilizerState(std::size_t n, std::vector<PauliOperator> gens)
        : n_(n), gens_(std::move(gens)) {}

    std::size_t n_;
    std::vector<PauliOperator> gens_;
};

enum class MeasureCase { in_group, random, reveals_logical };

struct FrameClassification {
    MeasureCase kind = MeasureCase::in_group;
    unsigned phase = 0;      // in_group: i^phase relates a to the group product
    std::size_t pivot = 0;   // random: first anticommuting stabilizer index
};

// Partial-rank stabilizer frame plus tracked normalizer operators, for
// following how logical operators transform through a measurement circuit.
class CodeFrame {
public:
    CodeFrame(std::size_t n, std::vector<PauliOperator> stab, std::vector<PauliOperator> tracked)
        : n_(n), stab_(std::move(stab)), tracked_(std::move(tracked)) {
        Gf2Basis basis;
        for (std::size_t i = 0; i < stab_.size(); ++i) {
            if (stab_[i].size() != n_) throw std::invalid_argument("frame: length mismatch");
            if (!stab_[i].hermitian())
                throw std::invalid_argument("frame: stabilizer must square to +I");
            for (std::size_t j = i + 1; j < stab_.size(); ++j)
                if (!stab_[i].commutes_with(stab_[j]))
                    throw std::invalid_argument("frame: stabilizers anticommute");
            if (!basis.add(symplectic_row(stab_[i])))
                throw std::invalid_argument("frame: stabilizers are dependent");
        }
        for (const auto& t : tracked_) {
            if (t.size() != n_) throw std::invalid_argument("frame: length mismatch");
            for (const auto& s : stab_)
                if (!t.commutes_with(s))
                    throw std::invalid_argument("frame: tracked operator leaves the normalizer");
        }
    }

    std::size_t n() const { return n_; }
    const std::vector<PauliOperator>& stabilizers() const { return stab_; }
    const std::vector<PauliOperator>& tracked() const { return tracked_; }

    void apply_map(const CliffordMap& c) {
        if (c.size() != n_) throw std::invalid_argument("frame: map size mismatch");
        for (auto& g : stab_) g = c.apply(g);
        for (auto& t : tracked_) t = c.apply(t);
    }

    void apply_named(std::string_view name, const std::vector<std::size_t>& targets) {
        apply_map(named_gate(name).embedded(n_, targets));
    }

    void apply_pauli(const PauliOperator& c) {
        detail::conjugate_rows(stab_, c);
        detail::conjugate_rows(tracked_, c);
    }

    FrameClassification classify(const PauliOperator& a) const {
        if (a.size() != n_) throw std::invalid_argument("frame: size mismatch");
        for (std::size_t i = 0; i < stab_.size(); ++i)
            if (!stab_[i].commutes_with(a))
                return FrameClassification{MeasureCase::random, 0, i};
        if (const auto phi = group_phase(stab_, a))
            return FrameClassification{MeasureCase::in_group, *phi, 0};
        return FrameClassification{MeasureCase::reveals_logical, 0, 0};
    }

    // Collapse onto the chosen branch of a random-case measurement.  The
    // classification must come from classify(a) on the current frame.
    void collapse(const PauliOperator& a, const FrameClassification& cls, bool outcome_minus) {
        const PauliOperator pivot_value = stab_[cls.pivot];
        detail::collapse_rows(stab_, pivot_value, a);
        detail::collapse_rows(tracked_, pivot_value, a);
        PauliOperator replacement = a;
        if (outcome_minus) replacement.set_phase(replacement.phase() + 2u);
        stab_[cls.pivot] = std::move(replacement);
    }

private:
    std::size_t n_;
    std::vector<PauliOperator> stab_;
    std::vector<PauliOperator> tracked_;
};

// Measure a on the frame: deterministic outcomes resolve from the group
// phase, random outcomes take the requested branch, and measurements that
// would reveal logical information are reported without touching the frame.
inline std::pair<FrameClassification, MeasurementRecord> track_logical(
    CodeFrame& frame, const PauliOperator& a, bool branch_minus,
    const std::optional<PauliOperator>& correction = std::nullopt) {
    if (correction && correction->commutes_with(a))
        throw std::invalid_argument(
            "track: correction must anticommute with the measured operator");
    const FrameClassification cls = frame.classify(a);
    MeasurementRecord rec;
    switch (cls.kind) {
        case MeasureCase::in_group:
            if (cls.phase & 1u)
                throw std::invalid_argument("track: operator must square to +I");
            rec = MeasurementRecord{cls.phase == 0 ? +1 : -1, true, false};
            break;
        case MeasureCase::random:
            frame.collapse(a, cls, branch_minus);
            rec = MeasurementRecord{branch_minus ? -1 : +1, false, false};
            break;
        case MeasureCase::reveals_logical:
            return {cls, MeasurementRecord{}};
    }
    if (correction && rec.outcome < 0) {
        frame.apply_pauli(*correction);
        rec.corrected = true;
    }
    return {cls, rec};
}

struct FrameBranch {
    CodeFrame frame;
    std::vector<bool> bits;
    std::vector<MeasurementRecord> records;
};

// Explore every branch of the circuit's random measurements.  All frames
// evolve through identical step sequences; only outcome signs differ.
inline std::vector<FrameBranch> run_frame_branches(const Circuit& c, CodeFrame initial,
                                                   std::size_t branch_cap = 4096) {
    if (initial.n() != c.qubits()) throw std::invalid_argument("branches: size mismatch");
    std::vector<FrameBranch> branches;
    branches.push_back(FrameBranch{std::move(initial),
                                   std::vector<bool>(c.classical_bits(), false),
                                   {}});
    for (const auto& step : c.steps()) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            const CliffordMap gate = named_gate(g->name).embedded(c.qubits(), g->targets);
            for (auto& b : branches) b.frame.apply_map(gate);
        } else if (const auto* ctl = std::get_if<ControlledStep>(&step)) {
            const CliffordMap gate =
                named_gate(ctl->gate.name).embedded(c.qubits(), ctl->gate.targets);
            for (auto& b : branches)
                if (b.bits[ctl->bit]) b.frame.apply_map(gate);
        } else {
            const auto& m = std::get<MeasureStep>(step);
            std::vector<FrameBranch> next;
            for (auto& b : branches) {
                const FrameClassification cls = b.frame.classify(m.observable);
                if (cls.kind == MeasureCase::reveals_logical)
                    throw std::invalid_argument(
                        "branches: measurement reveals logical information");
                if (cls.kind == MeasureCase::in_group) {
                    auto [c2, rec] = track_logical(b.frame, m.observable, false, m.correction);
                    (void)c2;
                    b.bits[m.bit] = rec.outcome < 0;
                    b.records.push_back(rec);
                    next.push_back(std::move(b));
                    continue;
                }
                FrameBranch plus = b;
                auto [cp, rp] = track_logical(plus.frame, m.observable, false, m.correction);
                (void)cp;
                plus.bits[m.bit] = rp.outcome < 0;
                plus.records.push_back(rp);
                next.push_back(std::move(plus));
                auto [cm, rm] = track_logical(b.frame, m.observable, true, m.correction);
                (void)cm;
                b.bits[m.bit] = rm.outcome < 0;
                b.records.push_back(rm);
                next.push_back(std::move(b));
                if (next.size() > branch_cap)
                    throw std::invalid_argument("branches: too many branches");
            }
            branches = std::move(next);
        }
    }
    return branches;
}

struct TableauRun {
    StabilizerState state;
    std::vector<MeasurementRecord> records;
    std::vector<bool> bits;
};

// Run the circuit on a full-rank state with seeded outcome coins: one coin
// per random-case measurement, drawn as rng() & 1.
inline TableauRun run_tableau(const Circuit& c, StabilizerState initial, std::mt19937_64& rng) {
    if (initial.n() != c.qubits()) throw std::invalid_argument("run: size mismatch");
    TableauRun run{std::move(initial), {}, std::vector<bool>(c.classical_bits(), false)};
    for (const auto& step : c.steps()) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            run.state.apply_named(g->name, g->targets);
        } else if (const auto* ctl = std::get_if<ControlledStep>(&step)) {
            if (run.bits[ctl->bit]) run.state.apply_named(ctl->gate.name, ctl->gate.targets);
        } else {
            const auto& m = std::get<MeasureStep>(step);
            const MeasurementRecord rec =
                m.correction ? run.state.measure_and_correct(m.observable, *m.correction, rng)
                             : run.state.measure(m.observable, rng);
            run.bits[m.bit] = rec.outcome < 0;
            run.records.push_back(rec);
        }
    }
    return run;
}

}  // namespace stabkit
