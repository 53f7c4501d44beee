#pragma once

// Linear algebra over GF(2).
//
// Bit j of a BitVector is the j-th character of its string form (leftmost
// character is bit 0) and, for Pauli labels, refers to qubit j+1. Storage is
// little-endian within 64-bit words; bits at positions >= size() are always zero.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrand {

class BitVector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t len);

  /// Parses a string over {'0','1'}; leftmost character becomes bit 0.
  static BitVector from_string(std::string_view text);
  /// Takes the low `len` bits of `word` (len <= 64); bit j of the word becomes bit j.
  static BitVector from_word(std::size_t len, word_type word);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t j) const;
  void set(std::size_t j, bool value = true);
  void flip(std::size_t j);
  bool operator[](std::size_t j) const { return get(j); }

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;

  /// Low 64 bits as an integer; requires size() <= 64.
  word_type to_word() const;
  std::string to_string() const;

  /// Bits [begin, begin+count).
  BitVector slice(std::size_t begin, std::size_t count) const;
  BitVector concat(const BitVector& tail) const;

  std::span<const word_type> words() const noexcept { return words_; }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  friend BitVector operator&(BitVector lhs, const BitVector& rhs) { return lhs &= rhs; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& lhs, const BitVector& rhs);

 private:
  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

/// Row-major GF(2) matrix; every row has length cols().
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  /// All rows must share a length; `cols` disambiguates the zero-row case.
  static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols);
  static BitMatrix from_rows(std::vector<BitVector> rows);
  static BitMatrix from_strings(std::initializer_list<std::string_view> rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const BitVector& row(std::size_t i) const { return data_.at(i); }
  BitVector& row(std::size_t i) { return data_.at(i); }
  bool get(std::size_t i, std::size_t j) const { return data_.at(i).get(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { data_.at(i).set(j, value); }

  const std::vector<BitVector>& row_vectors() const noexcept { return data_; }

  /// Matrix-vector product M v over GF(2).
  BitVector operator*(const BitVector& v) const;
  BitMatrix transpose() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

/// Symplectic label (a, b) of the Pauli X^a Z^b.
struct SymplecticPair {
  BitVector a;
  BitVector b;
  friend bool operator==(const SymplecticPair&, const SymplecticPair&) = default;
};

/// Parity of the bitwise AND. Throws DimensionError on length mismatch.
bool gf2_dot(const BitVector& u, const BitVector& v);

/// a.d + b.c mod 2 for p = (a,b), q = (c,d). Equals 1 iff X^aZ^b and X^cZ^d anti-commute.
bool symplectic(const SymplecticPair& p, const SymplecticPair& q);

std::size_t gf2_rank(const BitMatrix& m);

/// Reduced row echelon form. Pivot search scans columns left to right and
/// takes the topmost remaining row with a one, so the result is deterministic.
/// `pivots` receives the pivot column of each nonzero row when non-null.
BitMatrix gf2_rref(const BitMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of { v : M v = 0 }, one vector per free column in ascending order.
/// The result has cols(M) - rank(M) rows and cols(M) columns.
BitMatrix gf2_kernel(const BitMatrix& m);

}  // namespace qrand
