#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabkit/bitvec.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/group.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

// A stabilizer code on n qubits with k encoded qubits: n-k commuting
// Hermitian generators plus a declared logical frame (X-bar_i, Z-bar_i).
class StabilizerCode {
public:
    StabilizerCode() = default;

    StabilizerCode(std::string name, std::size_t n,
                   std::vector<PauliOperator> generators,
                   std::vector<PauliOperator> logical_x,
                   std::vector<PauliOperator> logical_z)
        : name_(std::move(name)),
          n_(n),
          generators_(std::move(generators)),
          logical_x_(std::move(logical_x)),
          logical_z_(std::move(logical_z)) {
        if (logical_x_.size() != logical_z_.size())
            throw std::invalid_argument("code: logical_x/logical_z count mismatch");
        if (generators_.size() + logical_x_.size() != n_)
            throw std::invalid_argument("code: generator count must be n - k");
        for (const auto& g : generators_)
            if (g.size() != n_) throw std::invalid_argument("code: generator length mismatch");
        for (const auto& l : logical_x_)
            if (l.size() != n_) throw std::invalid_argument("code: logical length mismatch");
        for (const auto& l : logical_z_)
            if (l.size() != n_) throw std::invalid_argument("code: logical length mismatch");
    }

    const std::string& name() const { return name_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return logical_x_.size(); }
    const std::vector<PauliOperator>& generators() const { return generators_; }
    const std::vector<PauliOperator>& logical_x() const { return logical_x_; }
    const std::vector<PauliOperator>& logical_z() const { return logical_z_; }

private:
    std::string name_;
    std::size_t n_ = 0;
    std::vector<PauliOperator> generators_;
    std::vector<PauliOperator> logical_x_;
    std::vector<PauliOperator> logical_z_;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Element of N(S) factored as i^phase * prod X-bar^x * prod Z-bar^z * prod M^s.
// `logical` is a k-qubit operator (phase 0) holding the x/z exponent patterns.
struct LogicalDecomposition {
    PauliOperator logical;
    unsigned phase = 0;
    BitVec stabilizer_part;
};

struct CssSectors {
    std::vector<PauliOperator> x_sector;
    std::vector<PauliOperator> z_sector;
};

struct SelfDualReport {
    bool self_dual = false;
    bool doubly_even = false;
};

inline ValidationReport validate_code(const StabilizerCode& c) {
    ValidationReport rep;
    const auto& gens = c.generators();
    const auto& lx = c.logical_x();
    const auto& lz = c.logical_z();
    const std::size_t r = gens.size();
    const std::size_t k = c.k();

    auto tag = [](char kind, std::size_t i) {
        std::ostringstream os;
        os << kind << (i + 1);
        return os.str();
    };

    for (std::size_t i = 0; i < r; ++i)
        if (!gens[i].hermitian())
            rep.problems.push_back("generator " + tag('M', i) + " does not square to +I");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (!gens[i].commutes_with(gens[j]))
                rep.problems.push_back("generators " + tag('M', i) + ", " + tag('M', j) +
                                       " anticommute");

    {
        Gf2Basis basis;
        for (std::size_t i = 0; i < r; ++i)
            if (!basis.add(symplectic_row(gens[i])))
                rep.problems.push_back("generator " + tag('M', i) +
                                       " is a product of earlier generators");
    }

    for (std::size_t i = 0; i < k; ++i) {
        if (!lx[i].hermitian())
            rep.problems.push_back("logical " + tag('X', i) + " does not square to +I");
        if (!lz[i].hermitian())
            rep.problems.push_back("logical " + tag('Z', i) + " does not square to +I");
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (!lx[i].commutes_with(gens[j]))
                rep.problems.push_back("logical " + tag('X', i) + " anticommutes with " +
                                       tag('M', j));
            if (!lz[i].commutes_with(gens[j]))
                rep.problems.push_back("logical " + tag('Z', i) + " anticommutes with " +
                                       tag('M', j));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const bool anti = !lx[i].commutes_with(lz[j]);
            if (anti != (i == j))
                rep.problems.push_back("logicals " + tag('X', i) + ", " + tag('Z', j) +
                                       (anti ? " anticommute" : " fail to anticommute"));
            if (j > i) {
                if (!lx[i].commutes_with(lx[j]))
                    rep.problems.push_back("logicals " + tag('X', i) + ", " + tag('X', j) +
                                           " anticommute");
                if (!lz[i].commutes_with(lz[j]))
                    rep.problems.push_back("logicals " + tag('Z', i) + ", " + tag('Z', j) +
                                           " anticommute");
            }
        }
    return rep;
}

struct Syndrome {
    BitVec bits;
};

inline Syndrome syndrome(const StabilizerCode& c, const PauliOperator& e) {
    if (e.size() != c.n()) throw std::invalid_argument("syndrome: size mismatch");
    const auto& gens = c.generators();
    BitVec bits(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        bits.set(i, !gens[i].commutes_with(e));
    return Syndrome{bits};
}

// Phase exponent phi with p = i^phi * (product of generators), if p's pattern
// lies in the generator span; empty otherwise.
inline std::optional<unsigned> in_stabilizer(const StabilizerCode& c, const PauliOperator& p) {
    if (p.size() != c.n()) throw std::invalid_argument("in_stabilizer: size mismatch");
    return group_phase(c.generators(), p);
}

inline bool in_normalizer(const StabilizerCode& c, const PauliOperator& p) {
    if (p.size() != c.n()) throw std::invalid_argument("in_normalizer: size mismatch");
    for (const auto& g : c.generators())
        if (!g.commutes_with(p)) return false;
    return true;
}

inline LogicalDecomposition reduce_logical(const StabilizerCode& c, const PauliOperator& p) {
    if (p.size() != c.n()) throw std::invalid_argument("reduce_logical: size mismatch");
    if (!in_normalizer(c, p))
        throw std::invalid_argument("reduce_logical: operator is not in the normalizer");

    const std::size_t k = c.k();
    BitVec lx(k), lz(k);
    for (std::size_t i = 0; i < k; ++i) {
        lx.set(i, !p.commutes_with(c.logical_z()[i]));
        lz.set(i, !p.commutes_with(c.logical_x()[i]));
    }

    PauliOperator frame = PauliOperator::identity(c.n());
    for (std::size_t i = 0; i < k; ++i)
        if (lx.get(i)) frame = frame * c.logical_x()[i];
    for (std::size_t i = 0; i < k; ++i)
        if (lz.get(i)) frame = frame * c.logical_z()[i];

    const PauliOperator residue = frame.inverse() * p;
    auto sol = solve_in_group(c.generators(), residue);
    if (!sol)
        throw std::invalid_argument("reduce_logical: operator is not in the normalizer");

    LogicalDecomposition dec;
    dec.logical = PauliOperator(lx, lz, 0);
    dec.phase = (residue.phase() + 4u - sol->product.phase()) & 3u;
    dec.stabilizer_part = sol->coeffs;
    return dec;
}

// Reassemble i^phase * prod X-bar^x * prod Z-bar^z * prod M^s from a
// decomposition; inverse of reduce_logical by construction.
inline PauliOperator assemble_logical(const StabilizerCode& c, const LogicalDecomposition& dec) {
    PauliOperator out = PauliOperator::identity(c.n());
    for (std::size_t i = 0; i < c.k(); ++i)
        if (dec.logical.x_bit(i)) out = out * c.logical_x()[i];
    for (std::size_t i = 0; i < c.k(); ++i)
        if (dec.logical.z_bit(i)) out = out * c.logical_z()[i];
    for (std::size_t i = 0; i < c.generators().size(); ++i)
        if (dec.stabilizer_part.get(i)) out = out * c.generators()[i];
    out.set_phase((out.phase() + dec.phase) & 3u);
    return out;
}

inline constexpr std::size_t kDistanceQubitGuard = 14;

// Minimum weight of any normalizer element acting nontrivially on the encoded
// qubits. Exhaustive Gray-code walk over products of generators and logicals.
inline std::size_t distance(const StabilizerCode& c) {
    if (c.n() > kDistanceQubitGuard)
        throw std::invalid_argument("distance: code too large for exhaustive enumeration");
    if (c.k() == 0)
        throw std::invalid_argument("distance: code has no encoded qubits");

    std::vector<PauliOperator> rows = c.generators();
    rows.insert(rows.end(), c.logical_x().begin(), c.logical_x().end());
    rows.insert(rows.end(), c.logical_z().begin(), c.logical_z().end());
    const std::size_t m = rows.size();
    const std::size_t r = c.generators().size();

    BitVec acc_x(c.n()), acc_z(c.n());
    std::uint64_t gray = 0;
    const std::uint64_t logical_mask = ~((std::uint64_t{1} << r) - 1);
    std::size_t best = c.n() + 1;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(t));
        gray ^= std::uint64_t{1} << j;
        acc_x ^= rows[j].x();
        acc_z ^= rows[j].z();
        if ((gray & logical_mask) == 0) continue;
        const std::size_t w = count_or(acc_x, acc_z);
        if (w < best) best = w;
    }
    return best;
}

namespace detail {

inline std::vector<PauliOperator> parse_rows(std::size_t n,
                                             std::initializer_list<const char*> rows) {
    std::vector<PauliOperator> out;
    out.reserve(rows.size());
    for (const char* s : rows) {
        out.push_back(PauliOperator::parse(s));
        if (out.back().size() != n) throw std::logic_error("builtin table row length mismatch");
    }
    return out;
}

}  // namespace detail

// steane7, five_qubit, eight_qubit, or distance2(n) for even n >= 4
// (also accepted as "distance2:n").
inline StabilizerCode builtin_code(std::string_view spec) {
    if (spec == "steane7") {
        return StabilizerCode(
            "steane7", 7,
            detail::parse_rows(7, {"XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI",
                                   "ZIZIZIZ"}),
            detail::parse_rows(7, {"IIIIXXX"}), detail::parse_rows(7, {"IIIIZZZ"}));
    }
    if (spec == "five_qubit") {
        return StabilizerCode("five_qubit", 5,
                              detail::parse_rows(5, {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}),
                              detail::parse_rows(5, {"XXXXX"}), detail::parse_rows(5, {"ZZZZZ"}));
    }
    if (spec == "eight_qubit") {
        return StabilizerCode(
            "eight_qubit", 8,
            detail::parse_rows(8, {"XXXXXXXX", "ZZZZZZZZ", "XIXIZYZY", "XIYZXIYZ", "XZIYIYXZ"}),
            detail::parse_rows(8, {"XXIIIZIZ", "XIXZIIZI", "XIIZXZII"}),
            detail::parse_rows(8, {"IZIZIZIZ", "IIZZIIZZ", "IIIIZZZZ"}));
    }
    std::string_view arg;
    if (spec.starts_with("distance2(") && spec.ends_with(")"))
        arg = spec.substr(10, spec.size() - 11);
    else if (spec.starts_with("distance2:"))
        arg = spec.substr(10);
    else
        throw std::invalid_argument("builtin_code: unknown code '" + std::string(spec) + "'");

    std::size_t n = 0;
    for (char ch : arg) {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("builtin_code: bad distance2 size '" + std::string(arg) +
                                        "'");
        n = n * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("builtin_code: distance2 needs even n >= 4");

    BitVec all(n), none(n);
    for (std::size_t i = 0; i < n; ++i) all.set(i, true);
    std::vector<PauliOperator> gens{PauliOperator(all, none, 0), PauliOperator(none, all, 0)};
    std::vector<PauliOperator> lx, lz;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        BitVec x(n), z(n);
        x.set(0, true);
        x.set(i, true);
        lx.emplace_back(x, BitVec(n), 0);
        z.set(i, true);
        z.set(n - 1, true);
        lz.emplace_back(BitVec(n), z, 0);
    }
    std::ostringstream nm;
    nm << "distance2(" << n << ")";
    return StabilizerCode(nm.str(), n, std::move(gens), std::move(lx), std::move(lz));
}

// X-only / Z-only generating sectors when the stabilizer splits cleanly:
// every generator's X part and Z part must separately be +1 elements of the
// group. Signed or Y-carrying generators have no such split.
inline std::optional<CssSectors> css_structure(const StabilizerCode& c) {
    const auto& gens = c.generators();
    const std::size_t n = c.n();
    for (const auto& g : gens) {
        const PauliOperator xpart(g.x(), BitVec(n), 0);
        const PauliOperator zpart(BitVec(n), g.z(), 0);
        auto px = group_phase(gens, xpart);
        auto pz = group_phase(gens, zpart);
        if (!px || *px != 0 || !pz || *pz != 0) return std::nullopt;
    }

    CssSectors sectors;
    Gf2Basis bx, bz;
    for (const auto& g : gens) {
        if (g.x().any() && bx.add(g.x()))
            sectors.x_sector.emplace_back(g.x(), BitVec(n), 0);
        if (g.z().any() && bz.add(g.z()))
            sectors.z_sector.emplace_back(BitVec(n), g.z(), 0);
    }
    if (bx.rank() + bz.rank() != gens.size()) return std::nullopt;
    return sectors;
}

inline constexpr std::size_t kSectorEnumerationGuard = 20;

inline SelfDualReport doubly_even_self_dual_check(const StabilizerCode& c) {
    auto sectors = css_structure(c);
    if (!sectors) throw std::invalid_argument("doubly_even_self_dual_check: code is not CSS");
    if (c.generators().size() > kSectorEnumerationGuard)
        throw std::invalid_argument("doubly_even_self_dual_check: sector too large to enumerate");

    SelfDualReport rep;

    Gf2Basis xspan;
    std::vector<BitVec> xrows, zrows;
    for (const auto& g : sectors->x_sector) xrows.push_back(g.x());
    for (const auto& g : sectors->z_sector) zrows.push_back(g.z());
    rep.self_dual = xrows.size() == zrows.size();
    if (rep.self_dual) {
        Gf2Basis bx;
        for (const auto& r : xrows) bx.add(r);
        for (const auto& r : zrows)
            if (!bx.contains(r)) rep.self_dual = false;
    }

    rep.doubly_even = true;
    const std::size_t m = xrows.size();
    BitVec acc(c.n());
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) {
        acc ^= xrows[static_cast<unsigned>(std::countr_zero(t))];
        if (acc.count() % 4 != 0) {
            rep.doubly_even = false;
            break;
        }
    }
    return rep;
}

// Logical frame from generators alone: symplectic Gram-Schmidt over the
// normalizer pattern space modulo the generator span, minimal-index pivots.
inline std::pair<std::vector<PauliOperator>, std::vector<PauliOperator>> derive_logicals(
    std::size_t n, const std::vector<PauliOperator>& gens) {
    std::vector<BitVec> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) rows.push_back(concat(g.z(), g.x()));
    std::vector<BitVec> normalizer = gens.empty()
                                         ? std::vector<BitVec>{}
                                         : gf2_kernel(rows, 2 * n);
    if (gens.empty()) {
        // Kernel of an empty system is everything; use the standard basis.
        for (std::size_t i = 0; i < 2 * n; ++i) {
            BitVec v(2 * n);
            v.set(i, true);
            normalizer.push_back(v);
        }
    }

    Gf2Basis stab_span;
    for (const auto& g : gens) stab_span.add(symplectic_row(g));

    auto symp = [n](const BitVec& a, const BitVec& b) {
        return dot(a.slice(0, n), b.slice(n, 2 * n)) ^ dot(a.slice(n, 2 * n), b.slice(0, n));
    };
    auto canonical = [n](const BitVec& v) {
        const BitVec x = v.slice(0, n), z = v.slice(n, 2 * n);
        PauliOperator p(x, z, 0);
        p.set_phase(p.y_count() & 3u);
        return p;
    };

    std::vector<BitVec> pool = std::move(normalizer);
    std::vector<PauliOperator> lx, lz;
    Gf2Basis used = stab_span;
    while (true) {
        std::size_t vi = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (!used.contains(pool[i])) {
                vi = i;
                break;
            }
        if (vi == pool.size()) break;
        const BitVec v = pool[vi];

        std::size_t wi = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (symp(v, pool[i])) {
                wi = i;
                break;
            }
        if (wi == pool.size())
            throw std::logic_error("derive_logicals: no symplectic partner found");
        const BitVec w = pool[wi];

        for (auto& u : pool) {
            if (symp(u, w)) u ^= v;
            if (symp(u, v)) u ^= w;
        }
        lx.push_back(canonical(v));
        lz.push_back(canonical(w));
        used.add(v);
        used.add(w);
    }
    return {std::move(lx), std::move(lz)};
}

inline StabilizerCode tensor_power(const StabilizerCode& c, std::size_t m) {
    const std::size_t n = c.n();
    std::vector<PauliOperator> gens, lx, lz;
    for (std::size_t b = 0; b < m; ++b)
        for (const auto& g : c.generators()) gens.push_back(g.embedded(m * n, b * n));
    for (std::size_t b = 0; b < m; ++b) {
        for (const auto& l : c.logical_x()) lx.push_back(l.embedded(m * n, b * n));
        for (const auto& l : c.logical_z()) lz.push_back(l.embedded(m * n, b * n));
    }
    std::ostringstream nm;
    nm << c.name() << "^" << m;
    return StabilizerCode(nm.str(), m * n, std::move(gens), std::move(lx), std::move(lz));
}

struct StabLoadResult {
    StabilizerCode code;
    bool signs_normalized = false;
    bool logicals_derived = false;
};

// .stab format: `n=<int> k=<int>` header, then `M<i>: <pauli>` generator lines
// and optional `X<i>: ...` / `Z<i>: ...` logical lines; `#` starts a comment.
// Generators carrying a -1 sign are normalized at load by conjugating the
// whole code with a Pauli solved from the sign pattern.
inline StabLoadResult load_stab(std::string_view text) {
    std::size_t n = 0, k = 0;
    bool header_seen = false;
    std::vector<std::pair<std::size_t, PauliOperator>> ms, xs, zs;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        auto fail = [&](const std::string& msg) {
            std::ostringstream os;
            os << "stab parse error at line " << lineno << ": " << msg;
            throw std::invalid_argument(os.str());
        };

        if (!header_seen) {
            std::string second;
            if (!(ls >> second)) fail("expected header 'n=<int> k=<int>'");
            auto num = [&](const std::string& s, std::string_view key) {
                if (s.size() < key.size() + 1 || s.compare(0, key.size(), key) != 0)
                    fail("expected header 'n=<int> k=<int>'");
                std::size_t v = 0;
                for (std::size_t i = key.size(); i < s.size(); ++i) {
                    if (s[i] < '0' || s[i] > '9') fail("bad number in header");
                    v = v * 10 + static_cast<std::size_t>(s[i] - '0');
                }
                return v;
            };
            n = num(tok, "n=");
            k = num(second, "k=");
            if (k > n) fail("k exceeds n");
            header_seen = true;
            continue;
        }

        if (tok.size() < 3 || tok.back() != ':') fail("expected 'M<i>:', 'X<i>:' or 'Z<i>:'");
        const char kind = tok.front();
        std::size_t idx = 0;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9') fail("bad operator index");
            idx = idx * 10 + static_cast<std::size_t>(tok[i] - '0');
        }
        if (idx == 0) fail("operator indices are 1-based");

        std::string body;
        if (!(ls >> body)) fail("missing operator string");
        std::string extra;
        if (ls >> extra) fail("trailing text after operator");
        PauliOperator p;
        try {
            p = PauliOperator::parse(body);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (p.size() != n) fail("operator length does not match n");

        if (kind == 'M')
            ms.emplace_back(idx, p);
        else if (kind == 'X')
            xs.emplace_back(idx, p);
        else if (kind == 'Z')
            zs.emplace_back(idx, p);
        else
            fail("unknown line kind");
    }
    if (!header_seen) throw std::invalid_argument("stab parse error: missing header");
    if (ms.size() != n - k)
        throw std::invalid_argument("stab parse error: expected n-k generator lines");
    if (xs.size() != zs.size() || (!xs.empty() && xs.size() != k))
        throw std::invalid_argument("stab parse error: logical lines must be absent or complete");

    auto ordered = [](std::vector<std::pair<std::size_t, PauliOperator>>& v, const char* what) {
        std::vector<PauliOperator> out(v.size());
        std::vector<bool> seen(v.size(), false);
        for (auto& [idx, p] : v) {
            if (idx > v.size() || seen[idx - 1])
                throw std::invalid_argument(std::string("stab parse error: bad ") + what +
                                            " index");
            seen[idx - 1] = true;
            out[idx - 1] = std::move(p);
        }
        return out;
    };
    std::vector<PauliOperator> gens = ordered(ms, "generator");
    std::vector<PauliOperator> lx = ordered(xs, "logical X");
    std::vector<PauliOperator> lz = ordered(zs, "logical Z");

    StabLoadResult result;
    if (lx.empty() && k > 0) {
        for (const auto& g : gens)
            if (!g.hermitian())
                throw std::invalid_argument("stab parse error: generator does not square to +I");
        // Deriving a frame needs commuting independent generators; surface
        // the structural problems before the solver trips over them.
        Gf2Basis span;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (!gens[i].commutes_with(gens[j]))
                    throw std::invalid_argument("stab parse error: generators anticommute");
            if (!span.add(symplectic_row(gens[i])))
                throw std::invalid_argument("stab parse error: generators are dependent");
        }
        auto [dx, dz] = derive_logicals(n, gens);
        if (dx.size() != k)
            throw std::invalid_argument("stab parse error: generators leave wrong logical count");
        lx = std::move(dx);
        lz = std::move(dz);
        result.logicals_derived = true;
    }

    // Normalize generator signs: find a Pauli D whose conjugation flips
    // exactly the generators whose phase is the -1 branch of Hermitian.
    bool need = false;
    BitVec want(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].hermitian())
            throw std::invalid_argument("stab parse error: generator does not square to +I");
        const bool flip = ((gens[i].phase() >> 1) & 1u) != 0;
        want.set(i, flip);
        need = need || flip;
    }
    if (need) {
        std::vector<BitVec> rows;
        rows.reserve(gens.size());
        for (const auto& g : gens) rows.push_back(concat(g.z(), g.x()));
        auto sol = gf2_solve_system(rows, 2 * n, want);
        if (!sol) throw std::invalid_argument("stab parse error: generator signs unsolvable");
        const PauliOperator d(sol->slice(0, n), sol->slice(n, 2 * n), 0);
        auto conj = [&d](PauliOperator p) {
            if (!p.commutes_with(d)) p.set_phase((p.phase() + 2u) & 3u);
            return p;
        };
        for (auto& g : gens) g = conj(g);
        for (auto& l : lx) l = conj(l);
        for (auto& l : lz) l = conj(l);
        result.signs_normalized = true;
    }

    result.code = StabilizerCode("", n, std::move(gens), std::move(lx), std::move(lz));
    return result;
}

inline std::string format_stab(const StabilizerCode& c) {
    std::ostringstream os;
    os << "n=" << c.n() << " k=" << c.k() << "\n";
    for (std::size_t i = 0; i < c.generators().size(); ++i)
        os << "M" << (i + 1) << ": " << c.generators()[i].str() << "\n";
    for (std::size_t i = 0; i < c.k(); ++i)
        os << "X" << (i + 1) << ": " << c.logical_x()[i].str() << "\n";
    for (std::size_t i = 0; i < c.k(); ++i)
        os << "Z" << (i + 1) << ": " << c.logical_z()[i].str() << "\n";
    return os.str();
}

}  // namespace stabkit
