#pragma once

#include <cctype>
#include <cstddef>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabkit/group.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

// Conjugation action of a normalizer element: the images U X_j U^dag and
// U Z_j U^dag.  Carries no global phase; equality is tableau equality.
class CliffordMap {
 public:
  CliffordMap() = default;

  static CliffordMap identity(std::size_t n) {
    CliffordMap c;
    c.x_.reserve(n);
    c.z_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      PauliOperator x(n), z(n);
      x.set_letter(j, 'X');
      z.set_letter(j, 'Z');
      c.x_.push_back(std::move(x));
      c.z_.push_back(std::move(z));
    }
    return c;
  }

  static CliffordMap from_images(std::vector<PauliOperator> x_images,
                                 std::vector<PauliOperator> z_images) {
    CliffordMap c;
    c.x_ = std::move(x_images);
    c.z_ = std::move(z_images);
    c.check_valid();
    return c;
  }

  std::size_t size() const { return x_.size(); }
  const PauliOperator& x_image(std::size_t j) const { return x_[j]; }
  const PauliOperator& z_image(std::size_t j) const { return z_[j]; }

  // Throws std::invalid_argument naming the first violated condition.
  void check_valid() const {
    const std::size_t n = x_.size();
    if (z_.size() != n)
      throw std::invalid_argument("clifford: image list sizes differ");
    for (std::size_t j = 0; j < n; ++j) {
      if (x_[j].size() != n || z_[j].size() != n)
        throw std::invalid_argument("clifford: image qubit count mismatch");
      if (!x_[j].hermitian() || !z_[j].hermitian())
        throw std::invalid_argument("clifford: image of qubit " +
                                    std::to_string(j + 1) +
                                    " is not Hermitian");
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        if (k > j && (!x_[j].commutes_with(x_[k]) ||
                      !z_[j].commutes_with(z_[k]) ||
                      !x_[j].commutes_with(z_[k]) ||
                      !z_[j].commutes_with(x_[k])))
          throw std::invalid_argument(
              "clifford: images of qubits " + std::to_string(j + 1) + "," +
              std::to_string(k + 1) + " break commutation");
        if (k == j && x_[j].commutes_with(z_[j]))
          throw std::invalid_argument("clifford: X/Z images of qubit " +
                                      std::to_string(j + 1) +
                                      " fail to anticommute");
      }
  }

  // U p U^dag = i^{p.phase} prod_j x_image_j^{p.x_j} prod_j z_image_j^{p.z_j},
  // both products ascending.  Exact in phase.
  PauliOperator apply(const PauliOperator& p) const {
    if (p.size() != size())
      throw std::invalid_argument("clifford: operand size mismatch");
    PauliOperator r = PauliOperator::identity(size());
    r.set_phase(p.phase());
    for (std::size_t j = 0; j < size(); ++j)
      if (p.x_bit(j)) r = r * x_[j];
    for (std::size_t j = 0; j < size(); ++j)
      if (p.z_bit(j)) r = r * z_[j];
    return r;
  }

  // First inner, then outer.
  friend CliffordMap compose(const CliffordMap& outer,
                             const CliffordMap& inner) {
    if (outer.size() != inner.size())
      throw std::invalid_argument("clifford: compose size mismatch");
    CliffordMap c;
    c.x_.reserve(inner.size());
    c.z_.reserve(inner.size());
    for (std::size_t j = 0; j < inner.size(); ++j) {
      c.x_.push_back(outer.apply(inner.x_[j]));
      c.z_.push_back(outer.apply(inner.z_[j]));
    }
    return c;
  }

  CliffordMap inverted() const {
    const std::size_t n = size();
    std::vector<PauliOperator> imgs;
    imgs.reserve(2 * n);
    for (const auto& p : x_) imgs.push_back(p);
    for (const auto& p : z_) imgs.push_back(p);
    CliffordMap v;
    v.x_.reserve(n);
    v.z_.reserve(n);
    auto preimage = [&](const PauliOperator& basic) {
      auto sol = solve_in_group(imgs, basic);
      if (!sol) throw std::invalid_argument("clifford: images not symplectic");
      // basic = i^beta * G with G the product of selected images; the same
      // product of the corresponding X_j/Z_j is the preimage of G.
      PauliOperator h = PauliOperator::identity(n);
      for (std::size_t t = 0; t < 2 * n; ++t) {
        if (!sol->coeffs.get(t)) continue;
        PauliOperator b(n);
        b.set_letter(t < n ? t : t - n, t < n ? 'X' : 'Z');
        h = h * b;
      }
      const unsigned beta = (4u - sol->product.phase()) & 3u;
      h.set_phase(h.phase() + beta);
      return h;
    };
    for (std::size_t k = 0; k < n; ++k) {
      PauliOperator xk(n), zk(n);
      xk.set_letter(k, 'X');
      zk.set_letter(k, 'Z');
      v.x_.push_back(preimage(xk));
      v.z_.push_back(preimage(zk));
    }
    return v;
  }

  // Act on qubits targets[j] of a larger register, identity elsewhere.
  CliffordMap embedded(std::size_t n_total,
                       const std::vector<std::size_t>& targets) const {
    if (targets.size() != size())
      throw std::invalid_argument("clifford: embed target count mismatch");
    CliffordMap r = identity(n_total);
    for (std::size_t j = 0; j < size(); ++j) {
      r.x_[targets[j]] = x_[j].embedded(n_total, targets);
      r.z_[targets[j]] = z_[j].embedded(n_total, targets);
    }
    return r;
  }

  bool operator==(const CliffordMap& o) const = default;

 private:
  std::vector<PauliOperator> x_, z_;
};

inline CliffordMap invert(const CliffordMap& c) { return c.inverted(); }

namespace detail {
struct GateSpec {
  const char* name;
  std::size_t arity;
  const char* const* x_images;
  const char* const* z_images;
};

// Conjugation tables.  Y = XZ throughout; sigma_y enters as iY.
inline const GateSpec* gate_table(std::size_t& count) {
  static const char* i_x[] = {"X"};
  static const char* i_z[] = {"Z"};
  static const char* x_x[] = {"X"};
  static const char* x_z[] = {"-Z"};
  static const char* y_x[] = {"-X"};
  static const char* y_z[] = {"-Z"};
  static const char* z_x[] = {"-X"};
  static const char* z_z[] = {"Z"};
  static const char* r_x[] = {"Z"};
  static const char* r_z[] = {"X"};
  static const char* p_x[] = {"iY"};
  static const char* p_z[] = {"Z"};
  static const char* pdg_x[] = {"-iY"};
  static const char* pdg_z[] = {"Z"};
  static const char* q_x[] = {"X"};
  static const char* q_z[] = {"iY"};
  static const char* qdg_x[] = {"X"};
  static const char* qdg_z[] = {"-iY"};
  static const char* t_x[] = {"iY"};
  static const char* t_z[] = {"X"};
  static const char* t2_x[] = {"Z"};
  static const char* t2_z[] = {"iY"};
  static const char* cnot_x[] = {"XX", "IX"};
  static const char* cnot_z[] = {"ZI", "ZZ"};
  static const char* cz_x[] = {"XZ", "ZX"};
  static const char* cz_z[] = {"ZI", "IZ"};
  static const char* swap_x[] = {"IX", "XI"};
  static const char* swap_z[] = {"IZ", "ZI"};
  static const char* t3_x[] = {"iXYZ", "iYXZ", "XXX"};
  static const char* t3_z[] = {"iZXY", "iXZY", "ZZZ"};
  static const char* g4_x[] = {"XXXI", "IXXX", "XIXX", "XXIX"};
  static const char* g4_z[] = {"ZZZI", "IZZZ", "ZIZZ", "ZZIZ"};
  static const GateSpec table[] = {
      {"I", 1, i_x, i_z},       {"X", 1, x_x, x_z},
      {"Y", 1, y_x, y_z},       {"Z", 1, z_x, z_z},
      {"R", 1, r_x, r_z},       {"P", 1, p_x, p_z},
      {"PDG", 1, pdg_x, pdg_z}, {"Q", 1, q_x, q_z},
      {"QDG", 1, qdg_x, qdg_z}, {"T", 1, t_x, t_z},
      {"T2", 1, t2_x, t2_z},    {"CNOT", 2, cnot_x, cnot_z},
      {"CZ", 2, cz_x, cz_z},    {"SWAP", 2, swap_x, swap_z},
      {"T3", 3, t3_x, t3_z},    {"G4", 4, g4_x, g4_z},
  };
  count = sizeof(table) / sizeof(table[0]);
  return table;
}

inline std::string canonical_gate_name(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "H") return "R";
  if (up == "TDG") return "T2";
  return up;
}
}  // namespace detail

inline bool is_gate_name(std::string_view name) {
  const std::string canon = detail::canonical_gate_name(name);
  std::size_t count = 0;
  const auto* table = detail::gate_table(count);
  for (std::size_t i = 0; i < count; ++i)
    if (canon == table[i].name) return true;
  return false;
}

inline std::size_t gate_arity(std::string_view name) {
  const std::string canon = detail::canonical_gate_name(name);
  std::size_t count = 0;
  const auto* table = detail::gate_table(count);
  for (std::size_t i = 0; i < count; ++i)
    if (canon == table[i].name) return table[i].arity;
  throw std::invalid_argument("unknown gate name: " + std::string(name));
}

inline CliffordMap named_gate(std::string_view name) {
  const std::string canon = detail::canonical_gate_name(name);
  std::size_t count = 0;
  const auto* table = detail::gate_table(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (canon != table[i].name) continue;
    std::vector<PauliOperator> xs, zs;
    xs.reserve(table[i].arity);
    zs.reserve(table[i].arity);
    for (std::size_t j = 0; j < table[i].arity; ++j) {
      xs.push_back(PauliOperator::parse(table[i].x_images[j]));
      zs.push_back(PauliOperator::parse(table[i].z_images[j]));
    }
    return CliffordMap::from_images(std::move(xs), std::move(zs));
  }
  throw std::invalid_argument("unknown gate name: " + std::string(name));
}

// .gate format: one image per line, `X<i> -> <pauli>` or `Z<i> -> <pauli>`,
// 1-based indices, each of X1..Xn and Z1..Zn exactly once in any order.
// `#` starts a comment.
inline CliffordMap parse_gate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<PauliOperator> xs, zs;
  std::vector<bool> have_x, have_z;

  auto fail = [&lineno](const std::string& msg) {
    std::ostringstream os;
    os << "gate parse error at line " << lineno << ": " << msg;
    throw std::invalid_argument(os.str());
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string lhs, arrow, rhs;
    if (!(ls >> lhs)) continue;
    if (!(ls >> arrow >> rhs) || arrow != "->") fail("expected '<row> -> <pauli>'");
    std::string extra;
    if (ls >> extra) fail("trailing text");
    if (lhs.size() < 2 || (lhs[0] != 'X' && lhs[0] != 'Z')) fail("row must be X<i> or Z<i>");
    std::size_t idx = 0;
    for (std::size_t i = 1; i < lhs.size(); ++i) {
      if (lhs[i] < '0' || lhs[i] > '9') fail("row must be X<i> or Z<i>");
      idx = idx * 10 + static_cast<std::size_t>(lhs[i] - '0');
    }
    if (idx == 0) fail("row indices are 1-based");
    PauliOperator img;
    try {
      img = PauliOperator::parse(rhs);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    auto& rows = lhs[0] == 'X' ? xs : zs;
    auto& have = lhs[0] == 'X' ? have_x : have_z;
    if (idx > rows.size()) {
      rows.resize(idx, PauliOperator(img.size()));
      have.resize(idx, false);
    }
    if (have[idx - 1]) fail("duplicate row " + lhs);
    rows[idx - 1] = std::move(img);
    have[idx - 1] = true;
  }
  if (xs.empty()) throw std::invalid_argument("gate parse error: no rows");
  if (xs.size() != zs.size())
    throw std::invalid_argument("gate parse error: X and Z row counts differ");
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (!have_x[j] || !have_z[j])
      throw std::invalid_argument("gate parse error: missing row for qubit " +
                                  std::to_string(j + 1));
  return CliffordMap::from_images(std::move(xs), std::move(zs));
}

inline std::string format_gate(const CliffordMap& m) {
  std::ostringstream os;
  for (std::size_t j = 0; j < m.size(); ++j)
    os << "X" << (j + 1) << " -> " << m.x_image(j).str() << "\n";
  for (std::size_t j = 0; j < m.size(); ++j)
    os << "Z" << (j + 1) << " -> " << m.z_image(j).str() << "\n";
  return os.str();
}

// Seed-derived word over the named gates.  Deterministic in the seed; not
// uniformly distributed over the Clifford group.
inline CliffordMap random_clifford(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_clifford: n must be >= 1");
  std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
  static const char* one_q[] = {"R", "P", "PDG", "Q", "QDG",
                                "T", "T2", "X", "Y", "Z"};
  static const char* two_q[] = {"CNOT", "CZ", "SWAP"};
  CliffordMap c = CliffordMap::identity(n);
  const std::size_t steps = 12 + 8 * n;
  for (std::size_t s = 0; s < steps; ++s) {
    const bool pair = n >= 2 && (eng() % 3u) == 0;
    if (pair) {
      const std::size_t a = eng() % n;
      std::size_t b = eng() % (n - 1);
      if (b >= a) ++b;
      c = compose(named_gate(two_q[eng() % 3u]).embedded(n, {a, b}), c);
    } else {
      const std::size_t a = eng() % n;
      c = compose(named_gate(one_q[eng() % 10u]).embedded(n, {a}), c);
    }
  }
  return c;
}

}  // namespace stabkit
