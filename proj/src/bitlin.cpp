#include "qrand/bitlin.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "qrand/error.hpp"

namespace qrand {

namespace {

std::size_t word_count(std::size_t len) { return (len + BitVector::word_bits - 1) / BitVector::word_bits; }

void require_same_length(const BitVector& u, const BitVector& v, const char* what) {
  if (u.size() != v.size()) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
}

}  // namespace

BitVector::BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

BitVector BitVector::from_string(std::string_view text) {
  BitVector v(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1') {
      v.set(j);
    } else if (text[j] != '0') {
      throw ParseError("bit string contains '" + std::string(1, text[j]) + "'");
    }
  }
  return v;
}

BitVector BitVector::from_word(std::size_t len, word_type word) {
  if (len > word_bits) {
    throw DimensionError("from_word: length " + std::to_string(len) + " exceeds 64");
  }
  BitVector v(len);
  if (len > 0) {
    v.words_[0] = len == word_bits ? word : (word & ((word_type{1} << len) - 1));
  }
  return v;
}

bool BitVector::get(std::size_t j) const {
  if (j >= len_) throw DimensionError("bit index out of range");
  return (words_[j / word_bits] >> (j % word_bits)) & 1u;
}

void BitVector::set(std::size_t j, bool value) {
  if (j >= len_) throw DimensionError("bit index out of range");
  const word_type mask = word_type{1} << (j % word_bits);
  if (value) {
    words_[j / word_bits] |= mask;
  } else {
    words_[j / word_bits] &= ~mask;
  }
}

void BitVector::flip(std::size_t j) {
  if (j >= len_) throw DimensionError("bit index out of range");
  words_[j / word_bits] ^= word_type{1} << (j % word_bits);
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

BitVector::word_type BitVector::to_word() const {
  if (len_ > word_bits) throw DimensionError("to_word: vector longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t j = 0; j < len_; ++j) {
    if (get(j)) s[j] = '1';
  }
  return s;
}

BitVector BitVector::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > len_) throw DimensionError("slice out of range");
  BitVector out(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (get(begin + j)) out.set(j);
  }
  return out;
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector out(len_ + tail.len_);
  std::copy(words_.begin(), words_.end(), out.words_.begin());
  for (std::size_t j = 0; j < tail.len_; ++j) {
    if (tail.get(j)) out.set(len_ + j);
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_length(*this, other, "xor");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_length(*this, other, "and");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

std::strong_ordering operator<=>(const BitVector& lhs, const BitVector& rhs) {
  if (auto c = lhs.len_ <=> rhs.len_; c != 0) return c;
  return lhs.words_ <=> rhs.words_;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("BitMatrix rows must all have length " + std::to_string(cols));
  }
  BitMatrix m;
  m.cols_ = cols;
  m.data_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  return from_rows(std::move(rows), cols);
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVector> v;
  v.reserve(rows.size());
  for (auto r : rows) v.push_back(BitVector::from_string(r));
  return from_rows(std::move(v));
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitVector BitMatrix::operator*(const BitVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector product: length mismatch");
  BitVector out(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    if (gf2_dot(data_[i], v)) out.set(i);
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(i, j)) t.set(j, i);
    }
  }
  return t;
}

bool gf2_dot(const BitVector& u, const BitVector& v) {
  require_same_length(u, v, "gf2_dot");
  BitVector::word_type acc = 0;
  auto uw = u.words();
  auto vw = v.words();
  for (std::size_t w = 0; w < uw.size(); ++w) acc ^= uw[w] & vw[w];
  return std::popcount(acc) & 1;
}

bool symplectic(const SymplecticPair& p, const SymplecticPair& q) {
  require_same_length(p.a, p.b, "symplectic");
  require_same_length(q.a, q.b, "symplectic");
  require_same_length(p.a, q.a, "symplectic");
  return gf2_dot(p.a, q.b) != gf2_dot(p.b, q.a);
}

BitMatrix gf2_rref(const BitMatrix& m, std::vector<std::size_t>* pivots) {
  BitMatrix r = m;
  if (pivots) pivots->clear();
  std::size_t top = 0;
  for (std::size_t col = 0; col < r.cols() && top < r.rows(); ++col) {
    std::size_t sel = top;
    while (sel < r.rows() && !r.get(sel, col)) ++sel;
    if (sel == r.rows()) continue;
    std::swap(r.row(sel), r.row(top));
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i != top && r.get(i, col)) r.row(i) ^= r.row(top);
    }
    if (pivots) pivots->push_back(col);
    ++top;
  }
  return r;
}

std::size_t gf2_rank(const BitMatrix& m) {
  std::vector<std::size_t> pivots;
  gf2_rref(m, &pivots);
  return pivots.size();
}

BitMatrix gf2_kernel(const BitMatrix& m) {
  std::vector<std::size_t> pivots;
  const BitMatrix r = gf2_rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(m.cols());
    v.set(free);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (r.get(i, free)) v.set(pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return BitMatrix::from_rows(std::move(basis), m.cols());
}

}  // namespace qrand
