#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace woe::detail {

// Fixed-size bit set over case indices.
class CaseBits {
 public:
  CaseBits() = default;
  explicit CaseBits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t size() const { return n_; }

  std::int64_t count() const {
    std::int64_t total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }

  CaseBits& operator&=(const CaseBits& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }

  friend CaseBits operator&(CaseBits lhs, const CaseBits& rhs) { return lhs &= rhs; }

  // popcount(a & b) without materialising the intersection.
  static std::int64_t count_and(const CaseBits& a, const CaseBits& b) {
    std::int64_t total = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k) total += std::popcount(a.words_[k] & b.words_[k]);
    return total;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace woe::detail
