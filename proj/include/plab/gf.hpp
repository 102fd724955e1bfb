#pragma once

// Exact arithmetic in GF(p^h).
//
// Elements are encoded as integers n = sum c_i p^i where c_0 + c_1 t + ... is
// the canonical polynomial representative modulo the defining irreducible.
// The encoding is a bijection onto [0, p^h), so 0 and 1 are the field's zero
// and one. Hot paths work on raw `Elem` values through a `Field`; the checked
// `FieldElement` wrapper carries its field and rejects mixed-field arithmetic.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plab {

using Elem = std::uint32_t;

class Field {
 public:
  // Lexicographically smallest monic irreducible of degree h over F_p.
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t h);
  // Explicit defining polynomial, coefficients constant term first (h + 1 of
  // them, monic). Throws UsageError unless it is irreducible of degree h.
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t h,
                                              std::vector<std::uint32_t> irreducible);
  // "p^h" or "p^h/irr=<enc>"; a bare prime power "q" is accepted too.
  static std::shared_ptr<const Field> parse(std::string_view description);
  // GF(n) for a prime power n with the default polynomial.
  static std::shared_ptr<const Field> of_order(std::uint64_t n);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return h_; }
  std::uint32_t size() const { return size_; }
  const std::vector<std::uint32_t>& irreducible() const { return irr_; }
  // Integer encoding sum c_i p^i of the defining polynomial (leading term included).
  std::uint64_t irreducible_code() const;
  // "p^h/irr=<enc>"
  std::string description() const;
  bool same_as(const Field& other) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // DomainError on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // x -> x^(p^e), 0 <= e < h.
  Elem frobenius(Elem a, std::uint32_t e) const;
  // Image of an integer under Z -> F_p.
  Elem from_int(std::int64_t v) const;

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

  // The p^d elements with x^(p^d) = x, ascending. UsageError unless d | h.
  std::vector<Elem> subfield_elements(std::uint32_t d) const;
  bool in_subfield(Elem a, std::uint32_t d) const;
  // Absolute trace of x from the degree-d subfield down to F_p (x must lie in it).
  Elem trace(Elem a, std::uint32_t d) const;

  Elem primitive_element() const { return generator_; }

  // Reference arithmetic straight from the polynomial representation; used
  // to build the tables and as an independent route in tests.
  Elem add_poly(Elem a, Elem b) const;
  Elem mul_poly(Elem a, Elem b) const;

 private:
  Field(std::uint32_t p, std::uint32_t h, std::vector<std::uint32_t> irr);
  void build_tables();

  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t size_;
  std::vector<std::uint32_t> irr_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= h

  bool tables_ = false;
  Elem generator_ = 0;
  std::vector<Elem> exp_;            // exp_[i] = g^i, length 2(size-1)
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::vector<Elem> add_table_;      // odd p, small fields only
  std::vector<Elem> neg_table_;
};

bool is_prime(std::uint64_t n);
// (p, h) with p^h = n, or (0, 0) when n is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t n);
// Trial division by every monic polynomial of degree 1..h/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

class FieldElement {
 public:
  FieldElement(const Field& field, Elem value);

  const Field& field() const { return *field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement frobenius(std::uint32_t e) const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  const Field* field_;
  Elem value_;
};

}  // namespace plab
