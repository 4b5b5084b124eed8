#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/circuit.hpp"
#include "stabkit/clifford.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

namespace detail {

// Shortest words over {R, P, PDG} reaching each of the 24 one-qubit maps.
inline const std::vector<std::string>& one_qubit_word(const CliffordMap& m) {
    static const std::map<std::string, std::vector<std::string>> table = [] {
        std::map<std::string, std::vector<std::string>> t;
        auto key = [](const CliffordMap& c) {
            return c.x_image(0).str() + "|" + c.z_image(0).str();
        };
        struct Node {
            CliffordMap map;
            std::vector<std::string> word;
        };
        std::deque<Node> queue;
        queue.push_back({CliffordMap::identity(1), {}});
        t.emplace(key(queue.front().map), std::vector<std::string>{});
        static const char* const gates[] = {"R", "P", "PDG"};
        while (!queue.empty()) {
            Node cur = std::move(queue.front());
            queue.pop_front();
            for (const char* g : gates) {
                CliffordMap next = compose(named_gate(g), cur.map);
                std::string k = key(next);
                if (t.count(k)) continue;
                std::vector<std::string> word = cur.word;
                word.emplace_back(g);
                t.emplace(std::move(k), word);
                queue.push_back({std::move(next), std::move(word)});
            }
        }
        return t;
    }();
    const auto it = table.find(m.x_image(0).str() + "|" + m.z_image(0).str());
    if (it == table.end())
        throw std::logic_error("synthesize: one-qubit map outside the Clifford group");
    return it->second;
}

// Induction step on the first qubit of the active window.  Normalizes the
// Z-image to X (x) M' and the X-image to (Z or I) (x) N' by one-qubit
// rotations, recurses on the remaining qubits, and emits the controlled
// stages with the basis-change between them.  Signs are reconciled by a
// single Pauli layer at the top level, so sub-targets carry canonical
// phases.
inline void synthesize_into(const CliffordMap& v, std::size_t offset,
                            std::vector<GateStep>& out) {
    const std::size_t n = v.size();
    if (n == 1) {
        for (const auto& g : one_qubit_word(v)) out.push_back({g, {offset}});
        return;
    }

    CliffordMap cur = v;
    std::vector<std::vector<GateStep>> post;

    while (cur.z_image(0).letter(0) != 'X') {
        const char m0 = cur.z_image(0).letter(0);
        if (m0 == 'I') {
            std::size_t j = 1;
            while (j < n && cur.z_image(0).letter(j) == 'I') ++j;
            if (j == n) throw std::logic_error("synthesize: trivial Z-image");
            cur = compose(named_gate("SWAP").embedded(n, {0, j}), cur);
            post.push_back({GateStep{"CNOT", {offset, offset + j}},
                            GateStep{"CNOT", {offset + j, offset}},
                            GateStep{"CNOT", {offset, offset + j}}});
        } else if (m0 == 'Z') {
            cur = compose(named_gate("R").embedded(n, {0}), cur);
            post.push_back({GateStep{"R", {offset}}});
        } else {
            cur = compose(named_gate("P").embedded(n, {0}), cur);
            post.push_back({GateStep{"PDG", {offset}}});
        }
    }

    std::vector<GateStep> pre;
    const char n0 = cur.x_image(0).letter(0);
    if (n0 == 'X') {
        cur = compose(cur, named_gate("P").embedded(n, {0}));
        pre.push_back(GateStep{"PDG", {offset}});
    } else if (n0 == 'Y') {
        const CliffordMap w = compose(named_gate("P"), compose(named_gate("R"), named_gate("P")));
        cur = compose(w.embedded(n, {0}), cur);
        post.push_back({GateStep{"PDG", {offset}},
                        GateStep{"R", {offset}},
                        GateStep{"PDG", {offset}}});
    }

    const PauliOperator m_full = cur.z_image(0);
    const PauliOperator n_full = cur.x_image(0);

    std::vector<PauliOperator> bx, bz;
    bx.reserve(n - 1);
    bz.reserve(n - 1);
    auto sub_target = [&](const PauliOperator& a) {
        const char a0 = a.letter(0);
        PauliOperator b = (a0 == 'I' || a0 == 'Z') ? a.restricted(1, n)
                                                   : (m_full * a).restricted(1, n);
        b.set_phase(static_cast<unsigned>(b.y_count()) & 3u);
        return b;
    };
    for (std::size_t k = 1; k < n; ++k) {
        bx.push_back(sub_target(cur.x_image(k)));
        bz.push_back(sub_target(cur.z_image(k)));
    }

    for (auto& g : pre) out.push_back(std::move(g));
    synthesize_into(CliffordMap::from_images(std::move(bx), std::move(bz)), offset + 1, out);

    auto controlled = [&](const PauliOperator& w) {
        for (std::size_t j = 1; j < n; ++j) {
            switch (w.letter(j)) {
                case 'X':
                    out.push_back({"CNOT", {offset, offset + j}});
                    break;
                case 'Z':
                    out.push_back({"R", {offset + j}});
                    out.push_back({"CNOT", {offset, offset + j}});
                    out.push_back({"R", {offset + j}});
                    break;
                case 'Y':
                    out.push_back({"PDG", {offset + j}});
                    out.push_back({"CNOT", {offset, offset + j}});
                    out.push_back({"P", {offset + j}});
                    break;
                default:
                    break;
            }
        }
    };
    controlled(n_full);
    out.push_back({"R", {offset}});
    controlled(m_full);

    while (!post.empty()) {
        for (auto& g : post.back()) out.push_back(g);
        post.pop_back();
    }
}

}  // namespace detail

// Decompose a normalizer map into {R, P, PDG, CNOT} plus a trailing Pauli
// layer; replaying the result composes to c exactly, phases included.
inline Circuit synthesize(const CliffordMap& c) {
    c.check_valid();
    const std::size_t n = c.size();
    Circuit out(n);
    if (c == named_gate("CNOT")) {
        out.append_gate("CNOT", {0, 1});
        return out;
    }

    std::vector<GateStep> steps;
    detail::synthesize_into(c, 0, steps);
    for (auto& g : steps) out.append_gate(g.name, std::move(g.targets));

    const CliffordMap achieved = circuit_to_map(out);
    PauliOperator d = PauliOperator::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& ax = achieved.x_image(k);
        const auto& az = achieved.z_image(k);
        if (ax.x() != c.x_image(k).x() || ax.z() != c.x_image(k).z() ||
            az.x() != c.z_image(k).x() || az.z() != c.z_image(k).z())
            throw std::logic_error("synthesize: image pattern mismatch");
        if (ax.phase() != c.x_image(k).phase()) d = d * az;
        if (az.phase() != c.z_image(k).phase()) d = d * ax;
    }
    for (std::size_t q = 0; q < n; ++q) {
        const char l = d.letter(q);
        if (l != 'I') out.append_gate(std::string(1, l), {q});
    }
    if (!(circuit_to_map(out) == c)) throw std::logic_error("synthesize: replay mismatch");
    return out;
}

}  // namespace stabkit
