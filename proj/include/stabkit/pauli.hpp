#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabkit/bitvec.hpp"

namespace stabkit {

// n-qubit Pauli operator in the canonical form i^phase * prod_j X_j^{x_j} *
// prod_j Z_j^{z_j}.  The letter Y denotes the product XZ = [[0,-1],[1,0]],
// so sigma_y is written iY.  phase is mod 4.
class PauliOperator {
 public:
  PauliOperator() = default;

  explicit PauliOperator(std::size_t n) : x_(n), z_(n), phase_(0) {}

  PauliOperator(BitVec x, BitVec z, unsigned phase)
      : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3u) {
    if (x_.size() != z_.size())
      throw std::invalid_argument("pauli: x/z length mismatch");
  }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  // Text form: optional sign token ("", "i", "-", "-i") then letters IXYZ.
  static PauliOperator parse(std::string_view text) {
    unsigned phase = 0;
    if (text.starts_with("-i")) {
      phase = 3;
      text.remove_prefix(2);
    } else if (text.starts_with("-")) {
      phase = 2;
      text.remove_prefix(1);
    } else if (text.starts_with("i")) {
      phase = 1;
      text.remove_prefix(1);
    } else if (text.starts_with("+")) {
      text.remove_prefix(1);
    }
    if (text.empty()) throw std::invalid_argument("pauli: empty letter string");
    PauliOperator p(text.size());
    p.phase_ = phase;
    for (std::size_t i = 0; i < text.size(); ++i) p.set_letter(i, text[i]);
    return p;
  }

  std::string str() const {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string s = prefix[phase_];
    for (std::size_t i = 0; i < size(); ++i) s += letter(i);
    return s;
  }

  std::size_t size() const { return x_.size(); }
  unsigned phase() const { return phase_; }
  void set_phase(unsigned p) { phase_ = p & 3u; }

  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }

  bool x_bit(std::size_t i) const { return x_.get(i); }
  bool z_bit(std::size_t i) const { return z_.get(i); }

  char letter(std::size_t i) const {
    static const char tab[4] = {'I', 'X', 'Z', 'Y'};
    return tab[(x_.get(i) ? 1 : 0) | (z_.get(i) ? 2 : 0)];
  }

  void set_letter(std::size_t i, char c) {
    switch (c) {
      case 'I': x_.set(i, false); z_.set(i, false); break;
      case 'X': x_.set(i, true);  z_.set(i, false); break;
      case 'Y': x_.set(i, true);  z_.set(i, true);  break;
      case 'Z': x_.set(i, false); z_.set(i, true);  break;
      default: throw std::invalid_argument("pauli: bad letter");
    }
  }

  // Exact product.  Moving b's X block left past a's Z block picks up
  // (-1)^(a.z . b.x).
  friend PauliOperator operator*(const PauliOperator& a,
                                 const PauliOperator& b) {
    if (a.size() != b.size())
      throw std::invalid_argument("pauli: size mismatch in product");
    PauliOperator r(a.x_ ^ b.x_, a.z_ ^ b.z_,
                    a.phase_ + b.phase_ + (dot(a.z_, b.x_) ? 2u : 0u));
    return r;
  }

  PauliOperator inverse() const {
    return PauliOperator(x_, z_, 4u - phase_ + (dot(x_, z_) ? 2u : 0u));
  }

  bool commutes_with(const PauliOperator& o) const {
    return dot(x_, o.z_) == dot(z_, o.x_);
  }

  // Squares to +I; equivalently phase parity matches the Y count parity.
  bool hermitian() const {
    return (phase_ & 1u) == (dot(x_, z_) ? 1u : 0u);
  }

  std::size_t y_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
      if (x_.get(i) && z_.get(i)) ++c;
    return c;
  }

  // Sign s in the sigma-letter form s * prod sigma_j (sigma_y = iY).
  // Defined for Hermitian operators, where it is +-1.
  int sigma_sign() const {
    return ((phase_ + 4 - (y_count() & 3u)) & 3u) == 0 ? 1 : -1;
  }

  std::size_t weight() const { return count_or(x_, z_); }

  bool pattern_trivial() const { return x_.none() && z_.none(); }
  bool is_identity() const { return pattern_trivial() && phase_ == 0; }

  friend PauliOperator tensor(const PauliOperator& a, const PauliOperator& b) {
    return PauliOperator(concat(a.x_, b.x_), concat(a.z_, b.z_),
                         a.phase_ + b.phase_);
  }

  // Place this operator on qubits targets[j] of an n_total-qubit register.
  PauliOperator embedded(std::size_t n_total,
                         const std::vector<std::size_t>& targets) const {
    if (targets.size() != size())
      throw std::invalid_argument("pauli: embed target count mismatch");
    PauliOperator r(n_total);
    r.phase_ = phase_;
    BitVec seen(n_total);
    for (std::size_t j = 0; j < size(); ++j) {
      if (targets[j] >= n_total)
        throw std::invalid_argument("pauli: embed target out of range");
      if (seen.get(targets[j]))
        throw std::invalid_argument("pauli: embed target repeated");
      seen.set(targets[j], true);
      r.x_.set(targets[j], x_.get(j));
      r.z_.set(targets[j], z_.get(j));
    }
    return r;
  }

  PauliOperator embedded(std::size_t n_total, std::size_t offset) const {
    std::vector<std::size_t> t(size());
    for (std::size_t j = 0; j < size(); ++j) t[j] = offset + j;
    return embedded(n_total, t);
  }

  PauliOperator restricted(std::size_t begin, std::size_t end) const {
    return PauliOperator(x_.slice(begin, end), z_.slice(begin, end), phase_);
  }

  bool operator==(const PauliOperator& o) const = default;

 private:
  BitVec x_, z_;
  unsigned phase_ = 0;
};

}  // namespace stabkit
