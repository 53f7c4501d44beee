#pragma once

// Arithmetic in GF(2^r), 1 <= r <= 32, in the standard polynomial basis
// (bit j of an element is the coefficient of x^j).

#include <cstdint>

#include "qrand/bitlin.hpp"

namespace qrand {

inline constexpr unsigned kMaxFieldDegree = 32;

struct FieldElement {
  std::uint64_t value = 0;  // coefficients, bit j <-> x^j; always < 2^degree
  unsigned degree = 0;

  BitVector bits() const { return BitVector::from_word(degree, value); }
  bool is_zero() const noexcept { return value == 0; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class FieldSpec {
 public:
  unsigned degree() const noexcept { return degree_; }
  /// Modulus polynomial as an integer with bit j <-> x^j (bit r is set).
  std::uint64_t modulus() const noexcept { return modulus_; }
  /// Same polynomial as a length r+1 BitVector (bit j <-> x^j).
  BitVector modulus_bits() const { return BitVector::from_word(degree_ + 1, modulus_); }
  std::uint64_t order() const noexcept { return (std::uint64_t{1} << degree_) - 1; }

  /// Throws DimensionError when value does not fit in `degree()` bits.
  FieldElement element(std::uint64_t value) const;
  FieldElement zero() const { return {0, degree_}; }
  FieldElement one() const { return {1, degree_}; }
  /// The generator x (equals 1 when r = 1).
  FieldElement generator() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend FieldSpec field_spec(unsigned r);
  FieldSpec(unsigned degree, std::uint64_t modulus) : degree_(degree), modulus_(modulus) {}

  unsigned degree_ = 0;
  std::uint64_t modulus_ = 0;
};

/// Field of degree r from a built-in table of primitive polynomials. Each
/// entry is re-checked on first use: x must have order exactly 2^r - 1.
FieldSpec field_spec(unsigned r);

/// Checks that `modulus` (bit j <-> x^j, degree r) is primitive by verifying
/// x^(2^r-1) = 1 and x^((2^r-1)/p) != 1 for each prime p dividing 2^r - 1.
bool is_primitive(std::uint64_t modulus, unsigned r);

FieldElement gf_mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b);
FieldElement gf_pow(const FieldSpec& spec, FieldElement a, std::uint64_t k);

}  // namespace qrand
