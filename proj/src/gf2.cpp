#include "simon/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "simon/error.hpp"

namespace simon {

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw ParseError("bit string must contain only 0 and 1");
    v.set(static_cast<int>(i), bits[i] == '1');
  }
  return v;
}

void BitVector::set(int i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  auto& w = words_[static_cast<std::size_t>(i / 64)];
  w = v ? (w | mask) : (w & ~mask);
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

int BitVector::popcount() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

int BitVector::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k]) return static_cast<int>(k * 64) + std::countr_zero(words_[k]);
  return -1;
}

bool BitVector::dot(const BitVector& o) const {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & o.words_[k];
  return std::popcount(acc) % 2 == 1;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s;
  for (int i = 0; i < size_; ++i) s += get(i) ? '1' : '0';
  return s;
}

bool GF2System::add(BitVector row) {
  if (row.size() != n_) throw ValidationError("GF(2) row length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (row.get(pivots_[k])) row ^= rows_[k];
  const int p = row.lowest();
  if (p < 0) return false;
  for (auto& r : rows_)
    if (r.get(p)) r ^= row;
  rows_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

std::vector<BitVector> GF2System::nullspace_basis() const {
  std::vector<char> is_pivot(static_cast<std::size_t>(n_), 0);
  for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<BitVector> basis;
  for (int f = 0; f < n_; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    BitVector x(n_);
    x.set(f);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (rows_[k].get(f)) x.set(pivots_[k]);
    basis.push_back(std::move(x));
  }
  return basis;
}

BitVector char_to_row(const IrrepCatalog& cat, int mu, const ProductLabel& psi) {
  BitVector b(static_cast<int>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!cat.is_one_dim(psi[i])) throw ValidationError("char_to_row needs a one-dimensional label");
    const Complex v = cat.character(psi[i], mu);
    if (std::abs(v + 1.0) < kStructuralTol) {
      b.set(static_cast<int>(i));
    } else if (std::abs(v - 1.0) >= kStructuralTol) {
      throw ValidationError("one-dimensional character is not +-1 at an involution");
    }
  }
  return b;
}

}  // namespace simon
