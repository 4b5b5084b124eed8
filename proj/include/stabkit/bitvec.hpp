#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stabkit {

// Packed GF(2) vector. Bit i lives in word i/64 at position i%64.
class BitVec {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const {
    assert(i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool v) {
    assert(i < n_);
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  void flip(std::size_t i) {
    assert(i < n_);
    w_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  BitVec& operator^=(const BitVec& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  // Parity of the AND of two vectors.
  friend bool dot(const BitVec& a, const BitVec& b) {
    assert(a.n_ == b.n_);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1u;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  // Popcount of the OR; the weight of a Pauli with these x/z halves.
  friend std::size_t count_or(const BitVec& a, const BitVec& b) {
    assert(a.n_ == b.n_);
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k)
      c += std::popcount(a.w_[k] | b.w_[k]);
    return c;
  }

  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t find_first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return (k << 6) + std::countr_zero(w_[k]);
    return npos;
  }

  friend BitVec concat(const BitVec& a, const BitVec& b) {
    BitVec r(a.n_ + b.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, a.get(i));
    for (std::size_t i = 0; i < b.n_; ++i) r.set(a.n_ + i, b.get(i));
    return r;
  }

  BitVec slice(std::size_t begin, std::size_t end) const {
    assert(begin <= end && end <= n_);
    BitVec r(end - begin);
    for (std::size_t i = begin; i < end; ++i) r.set(i - begin, get(i));
    return r;
  }

  bool operator==(const BitVec& o) const = default;

  std::string str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

 private:
  static std::size_t words_for(std::size_t n) { return (n + 63) >> 6; }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace stabkit
