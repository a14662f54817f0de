#include "contractlab/item_set.hpp"

#include <algorithm>

#include "contractlab/errors.hpp"

namespace contractlab {

ItemSet::ItemSet(std::size_t ground_size) : n_(ground_size), words_(words_for(ground_size), 0) {}

ItemSet ItemSet::from_mask(std::size_t ground_size, Word mask) {
  if (ground_size > kWordBits) throw DimensionError("from_mask needs a ground set of at most 64 items");
  if (ground_size < kWordBits && (mask >> ground_size) != 0) {
    throw DimensionError("mask has bits outside the ground set of size " + std::to_string(ground_size));
  }
  ItemSet s(ground_size);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

ItemSet ItemSet::from_indices(std::size_t ground_size, std::span<const std::size_t> indices) {
  ItemSet s(ground_size);
  for (std::size_t i : indices) s.insert(i);
  return s;
}

ItemSet ItemSet::full(std::size_t ground_size) {
  ItemSet s(ground_size);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~Word{0};
  if (const std::size_t rem = ground_size % kWordBits; rem != 0) {
    s.words_.back() = (Word{1} << rem) - 1;
  }
  return s;
}

bool ItemSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

void ItemSet::check_index(std::size_t i) const {
  if (i >= n_) {
    throw DimensionError("item " + std::to_string(i) + " outside ground set of size " + std::to_string(n_));
  }
}

void ItemSet::check_same_ground(const ItemSet& other) const {
  if (other.n_ != n_) {
    throw DimensionError("ground set mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
  }
}

bool ItemSet::contains(std::size_t i) const {
  check_index(i);
  return test_bit(words_, i);
}

void ItemSet::insert(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] |= Word{1} << (i % kWordBits);
}

void ItemSet::erase(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

ItemSet ItemSet::with(std::size_t i) const {
  ItemSet s = *this;
  s.insert(i);
  return s;
}

ItemSet ItemSet::without(std::size_t i) const {
  ItemSet s = *this;
  s.erase(i);
  return s;
}

Word ItemSet::mask() const {
  if (n_ > kWordBits) throw DimensionError("mask() needs a ground set of at most 64 items");
  return words_.empty() ? Word{0} : words_[0];
}

std::vector<std::size_t> ItemSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  check_same_ground(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
  check_same_ground(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
  check_same_ground(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool mask_less(const ItemSet& a, const ItemSet& b) {
  a.check_same_ground(b);
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
  }
  return false;
}

std::string ItemSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

}  // namespace contractlab
