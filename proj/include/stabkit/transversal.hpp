#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stabkit/clifford.hpp"
#include "stabkit/code.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/group.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

// One m-qubit gate applied at every position across the m blocks.
struct BitwiseStage {
    CliffordMap gate;
};

// Relabeling of positions applied identically inside each block: the qubit
// at position i moves to position perm[i].
struct PermutationStage {
    std::vector<std::size_t> perm;
};

using TransversalStage = std::variant<BitwiseStage, PermutationStage>;

struct TransversalCandidate {
    std::size_t blocks = 1;
    std::vector<TransversalStage> stages;
    std::string name;
};

inline TransversalCandidate bitwise_candidate(CliffordMap gate, std::string name) {
    TransversalCandidate c;
    c.blocks = gate.size();
    c.stages.push_back(BitwiseStage{std::move(gate)});
    c.name = std::move(name);
    return c;
}

inline TransversalCandidate bitwise_candidate(std::string_view gate_name) {
    const std::string canon = detail::canonical_gate_name(gate_name);
    return bitwise_candidate(named_gate(canon), canon);
}

inline TransversalCandidate permutation_candidate(std::vector<std::size_t> perm,
                                                  std::string name) {
    TransversalCandidate c;
    c.blocks = 1;
    c.stages.push_back(PermutationStage{std::move(perm)});
    c.name = std::move(name);
    return c;
}

struct TransversalWitness {
    std::size_t block = 0;      // 0-based
    std::size_t generator = 0;  // 0-based
    std::string reason;
};

struct TransversalVerdict {
    bool valid = false;
    std::optional<TransversalWitness> witness;
    std::optional<CliffordMap> logical;
};

// Conjugation map of the whole candidate on m*n qubits, block-major: the
// qubit at position i of block b is wire b*n + i.
inline CliffordMap candidate_map(const StabilizerCode& code, const TransversalCandidate& cand) {
    const std::size_t n = code.n();
    const std::size_t m = cand.blocks;
    if (m == 0) throw std::invalid_argument("transversal: need at least one block");
    const std::size_t total_n = m * n;

    CliffordMap total = CliffordMap::identity(total_n);
    for (const auto& stage : cand.stages) {
        if (const auto* bw = std::get_if<BitwiseStage>(&stage)) {
            if (bw->gate.size() != m)
                throw std::invalid_argument("transversal: bitwise stage arity must equal blocks");
            CliffordMap stage_map = CliffordMap::identity(total_n);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::size_t> targets(m);
                for (std::size_t b = 0; b < m; ++b) targets[b] = b * n + i;
                stage_map = compose(bw->gate.embedded(total_n, targets), stage_map);
            }
            total = compose(stage_map, total);
        } else {
            const auto& perm = std::get<PermutationStage>(stage).perm;
            if (perm.size() != n)
                throw std::invalid_argument("transversal: permutation length must equal n");
            std::vector<bool> seen(n, false);
            for (std::size_t v : perm) {
                if (v >= n || seen[v])
                    throw std::invalid_argument("transversal: stage is not a permutation");
                seen[v] = true;
            }
            std::vector<PauliOperator> xs, zs;
            xs.reserve(total_n);
            zs.reserve(total_n);
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t i = 0; i < n; ++i) {
                    PauliOperator x(total_n), z(total_n);
                    x.set_letter(b * n + perm[i], 'X');
                    z.set_letter(b * n + perm[i], 'Z');
                    xs.push_back(std::move(x));
                    zs.push_back(std::move(z));
                }
            total = compose(CliffordMap::from_images(std::move(xs), std::move(zs)), total);
        }
    }
    return total;
}

// Valid iff the image of every generator of S^m lands back in S^m with
// phase exponent 0; a -1 sign disqualifies (it maps codewords out of the
// joint +1 eigenspace).  When valid, the logical action is assembled from
// reduce_logical of each transformed encoded X/Z.
inline TransversalVerdict check_transversal(const StabilizerCode& code,
                                            const TransversalCandidate& cand) {
    const std::size_t n = code.n();
    const std::size_t m = cand.blocks;
    const std::size_t total_n = m * n;
    const CliffordMap total = candidate_map(code, cand);

    std::vector<PauliOperator> embedded_gens;
    embedded_gens.reserve(m * code.generators().size());
    for (std::size_t b = 0; b < m; ++b)
        for (const auto& g : code.generators())
            embedded_gens.push_back(g.embedded(total_n, b * n));

    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t gi = 0; gi < code.generators().size(); ++gi) {
            const PauliOperator image =
                total.apply(code.generators()[gi].embedded(total_n, b * n));
            const auto phi = group_phase(embedded_gens, image);
            if (phi && *phi == 0) continue;
            TransversalVerdict verdict;
            verdict.witness = TransversalWitness{
                b, gi,
                phi ? "image is minus a stabilizer element"
                    : "image leaves the stabilizer group"};
            return verdict;
        }

    const StabilizerCode big = tensor_power(code, m);
    std::vector<PauliOperator> lx, lz;
    lx.reserve(m * code.k());
    lz.reserve(m * code.k());
    auto logical_row = [&](const PauliOperator& op) {
        const LogicalDecomposition dec = reduce_logical(big, total.apply(op));
        PauliOperator row = dec.logical;
        row.set_phase(dec.phase);
        return row;
    };
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t j = 0; j < code.k(); ++j) {
            lx.push_back(logical_row(code.logical_x()[j].embedded(total_n, b * n)));
            lz.push_back(logical_row(code.logical_z()[j].embedded(total_n, b * n)));
        }

    TransversalVerdict verdict;
    verdict.valid = true;
    verdict.logical = CliffordMap::from_images(std::move(lx), std::move(lz));
    return verdict;
}

inline CliffordMap logical_action(const StabilizerCode& code, const TransversalCandidate& cand) {
    TransversalVerdict v = check_transversal(code, cand);
    if (!v.valid)
        throw std::invalid_argument("logical_action: candidate is not a valid transversal operation");
    return *v.logical;
}

// The 24 sign-resolved single-qubit normalizer maps in a fixed enumeration
// order (X image pattern, Z image pattern, then signs).
inline std::vector<CliffordMap> phaseless_single_qubit_cliffords() {
    std::vector<CliffordMap> out;
    out.reserve(24);
    auto op = [](char letter, bool minus) {
        PauliOperator p(1);
        p.set_letter(0, letter);
        p.set_phase((static_cast<unsigned>(p.y_count()) + (minus ? 2u : 0u)) & 3u);
        return p;
    };
    static constexpr char letters[] = {'X', 'Y', 'Z'};
    for (char lx : letters)
        for (char lz : letters) {
            if (lx == lz) continue;
            for (int sx = 0; sx < 2; ++sx)
                for (int sz = 0; sz < 2; ++sz)
                    out.push_back(
                        CliffordMap::from_images({op(lx, sx != 0)}, {op(lz, sz != 0)}));
        }
    return out;
}

// Name a single-qubit map: the named-gate table when it matches, otherwise
// the shortest word over {R, P} written first-applied-first.
inline std::string single_qubit_label(const CliffordMap& g) {
    static const char* const named[] = {"I", "X",   "Y", "Z",   "R", "P",
                                        "PDG", "Q", "QDG", "T", "T2"};
    for (const char* name : named)
        if (named_gate(name) == g) return name;
    static const std::map<std::string, std::string> words = [] {
        std::map<std::string, std::string> t;
        auto key = [](const CliffordMap& c) {
            return c.x_image(0).str() + "|" + c.z_image(0).str();
        };
        std::vector<std::pair<CliffordMap, std::string>> queue;
        queue.emplace_back(CliffordMap::identity(1), "");
        t.emplace(key(queue.front().first), "");
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto cur = queue[head];
            for (const char* gate : {"R", "P"}) {
                CliffordMap next = compose(named_gate(gate), cur.first);
                std::string k = key(next);
                if (t.count(k)) continue;
                std::string word = cur.second + gate;
                t.emplace(std::move(k), word);
                queue.emplace_back(std::move(next), std::move(word));
            }
        }
        return t;
    }();
    const auto it = words.find(g.x_image(0).str() + "|" + g.z_image(0).str());
    if (it == words.end())
        throw std::logic_error("label: one-qubit map outside the Clifford group");
    return it->second;
}

struct SweepResult {
    std::string name;
    CliffordMap gate;
    TransversalVerdict verdict;
};

// All 24 single-qubit maps applied bitwise; returns the valid ones with
// their logical actions, in enumeration order.
inline std::vector<SweepResult> search_single_qubit_transversal(const StabilizerCode& code) {
    std::vector<SweepResult> out;
    for (const auto& g : phaseless_single_qubit_cliffords()) {
        TransversalCandidate cand = bitwise_candidate(g, single_qubit_label(g));
        TransversalVerdict v = check_transversal(code, cand);
        if (v.valid) out.push_back(SweepResult{cand.name, g, std::move(v)});
    }
    return out;
}

// [bitwise CNOT valid] <=> [code splits into X/Z sectors].
inline bool css_cnot_theorem_check(const StabilizerCode& code) {
    const bool cnot_valid =
        check_transversal(code, bitwise_candidate(named_gate("CNOT"), "CNOT")).valid;
    const bool css = css_structure(code).has_value();
    return cnot_valid == css;
}

inline std::vector<TransversalCandidate> eight_qubit_permutations() {
    return {
        permutation_candidate({4, 5, 6, 7, 0, 1, 2, 3}, "swap_halves"),
        permutation_candidate({2, 3, 0, 1, 6, 7, 4, 5}, "swap_pairs"),
        permutation_candidate({1, 0, 3, 2, 5, 4, 7, 6}, "swap_odd_even"),
    };
}

// Seed-deterministic rejection sampling: Hermitian patterns with random
// signs, kept when they commute with and are independent of those already
// chosen.  Logical operators are derived from the result.
inline StabilizerCode random_code(std::size_t n, std::size_t num_generators,
                                  std::uint64_t seed) {
    if (num_generators >= n)
        throw std::invalid_argument("random_code: need at least one encoded qubit");
    std::mt19937_64 eng(seed ^ 0x2545f4914f6cdd1dull);
    std::vector<PauliOperator> gens;
    Gf2Basis basis;
    std::size_t attempts = 0;
    while (gens.size() < num_generators) {
        if (++attempts > 10000 * (num_generators + 1))
            throw std::logic_error("random_code: rejection sampling stalled");
        PauliOperator p(n);
        for (std::size_t q = 0; q < n; ++q) p.set_letter(q, "IXZY"[eng() & 3u]);
        if (p.pattern_trivial()) continue;
        p.set_phase((static_cast<unsigned>(p.y_count()) + 2u * (eng() & 1u)) & 3u);
        bool ok = true;
        for (const auto& g : gens)
            if (!g.commutes_with(p)) {
                ok = false;
                break;
            }
        if (!ok || !basis.add(symplectic_row(p))) continue;
        gens.push_back(std::move(p));
    }
    auto [lx, lz] = derive_logicals(n, gens);
    return StabilizerCode("random", n, std::move(gens), std::move(lx), std::move(lz));
}

}  // namespace stabkit
