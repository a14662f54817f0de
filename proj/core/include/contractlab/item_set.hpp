#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace contractlab {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

// Raw bit helpers used by the hot loops, which work on spans rather than ItemSet.
inline bool test_bit(std::span<const Word> bits, std::size_t i) {
  return (bits[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline std::size_t popcount(std::span<const Word> bits) {
  std::size_t c = 0;
  for (Word w : bits) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// A subset of the ground set {0, ..., n-1}. Bits at positions >= n are always clear.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(std::size_t ground_size);

  static ItemSet from_mask(std::size_t ground_size, Word mask);
  static ItemSet from_indices(std::size_t ground_size, std::span<const std::size_t> indices);
  static ItemSet full(std::size_t ground_size);

  std::size_t ground_size() const { return n_; }
  std::size_t size() const { return popcount(words_); }
  bool empty() const;

  bool contains(std::size_t i) const;
  void insert(std::size_t i);
  void erase(std::size_t i);
  ItemSet with(std::size_t i) const;
  ItemSet without(std::size_t i) const;

  // Requires ground_size() <= 64.
  Word mask() const;
  std::span<const Word> words() const { return words_; }
  std::vector<std::size_t> indices() const;

  bool is_subset_of(const ItemSet& other) const;

  ItemSet& operator|=(const ItemSet& other);
  ItemSet& operator&=(const ItemSet& other);
  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend bool operator==(const ItemSet&, const ItemSet&) = default;

  // Orders sets by their value as a binary number (the tie-breaking order).
  friend bool mask_less(const ItemSet& a, const ItemSet& b);

  // 1-based listing such as "{1,3}", matching the JSON convention.
  std::string to_string() const;

 private:
  void check_index(std::size_t i) const;
  void check_same_ground(const ItemSet& other) const;

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

}  // namespace contractlab
