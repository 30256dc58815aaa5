#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simon/rep.hpp"

namespace simon {

/// Fixed-length bit vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int size) : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}
  static BitVector from_string(const std::string& bits);

  int size() const { return size_; }
  bool get(int i) const { return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u; }
  void set(int i, bool v = true);
  bool any() const;
  int popcount() const;
  int lowest() const;  // index of the lowest set bit, or -1
  bool dot(const BitVector& o) const;
  BitVector& operator^=(const BitVector& o);
  friend bool operator==(const BitVector&, const BitVector&) = default;
  /// Coordinate 0 first.
  std::string to_string() const;

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incremental Gaussian elimination over GF(2). Rows are kept reduced against
/// each other, one per pivot column.
class GF2System {
 public:
  explicit GF2System(int n) : n_(n) {}

  /// Returns true if the row increased the rank.
  bool add(BitVector row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int n() const { return n_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  /// Basis of {x : r.x = 0 for all rows}.
  std::vector<BitVector> nullspace_basis() const;

 private:
  int n_;
  std::vector<BitVector> rows_;
  std::vector<int> pivots_;
};

/// b_i = 1 iff psi_i(mu) = -1. Throws ValidationError for a label with a
/// coordinate of dimension > 1.
BitVector char_to_row(const IrrepCatalog& cat, int mu, const ProductLabel& psi);

}  // namespace simon
