#pragma once

// Arithmetic in F_q for odd prime powers q = p^e.
//
// Elements are canonical integers in [0, q). For e > 1 the index is the
// base-p expansion of the polynomial-basis coordinates, digit i holding the
// coefficient of t^i, reduced modulo the lexicographically smallest monic
// irreducible polynomial of degree e.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isrg/error.hpp"

namespace isrg::gf {

inline constexpr std::uint64_t kDefaultOrderBound = std::uint64_t{1} << 20;

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  // Coefficients c_0..c_e of the monic modulus (c_e = 1); empty when e == 1.
  std::vector<std::uint32_t> modulus;
};

struct Element {
  std::uint32_t index = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

enum class Op { Add, Sub, Mul, Div, Neg, Inv };

namespace detail {

struct FieldData {
  FieldSpec spec;
  std::vector<std::uint32_t> add;  // q*q, only for small q
  std::vector<std::uint32_t> mul;  // q*q, only for small q
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> log;  // e > 1 only
  std::vector<std::uint32_t> exp;  // e > 1 only
  std::vector<std::int8_t> chi;
  std::vector<Element> squares;
  std::vector<Element> nonsquares;
  Element epsilon;
  Element half;
};

}  // namespace detail

/// Immutable, cheaply copyable handle to a finite field. Safe to share
/// across threads once constructed.
class Field {
 public:
  /// Full add/mul tables are kept up to this order; larger fields use
  /// log/antilog tables for multiplication and digit-wise addition.
  static constexpr std::uint32_t kTableOrderLimit = 256;

  static Field make(std::uint64_t p, std::uint32_t e,
                    std::uint64_t order_bound = kDefaultOrderBound);
  static Field of_order(std::uint64_t q, std::uint64_t order_bound = kDefaultOrderBound);

  const FieldSpec& spec() const noexcept { return d_->spec; }
  std::uint32_t order() const noexcept { return d_->spec.q; }
  std::uint32_t characteristic() const noexcept { return d_->spec.p; }

  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {1}; }
  Element element(std::uint64_t index) const;
  /// Image of an integer under Z -> F_p -> F_q.
  Element from_integer(std::int64_t n) const noexcept;

  Element add(Element a, Element b) const noexcept {
    const auto& d = *d_;
    if (!d.add.empty()) return {d.add[a.index * d.spec.q + b.index]};
    if (d.spec.e == 1) {
      const std::uint32_t s = a.index + b.index;
      return {s >= d.spec.p ? s - d.spec.p : s};
    }
    return add_digits(a, b);
  }
  Element neg(Element a) const noexcept { return {d_->neg[a.index]}; }
  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }
  Element mul(Element a, Element b) const noexcept {
    const auto& d = *d_;
    if (!d.mul.empty()) return {d.mul[a.index * d.spec.q + b.index]};
    if (d.spec.e == 1)
      return {static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % d.spec.p)};
    if (a.index == 0 || b.index == 0) return {0};
    std::uint32_t l = d.log[a.index] + d.log[b.index];
    if (l >= d.spec.q - 1) l -= d.spec.q - 1;
    return {d.exp[l]};
  }
  Element square(Element a) const noexcept { return mul(a, a); }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t n) const noexcept;
  Element arith(Element a, Element b, Op op) const;

  /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
  int chi(Element x) const noexcept { return d_->chi[x.index]; }
  std::span<const std::int8_t> char_table() const noexcept { return d_->chi; }
  const std::vector<Element>& squares() const noexcept { return d_->squares; }
  const std::vector<Element>& nonsquares() const noexcept { return d_->nonsquares; }

  /// Least-index element with chi(1 + eps^2) = -1.
  Element epsilon() const noexcept { return d_->epsilon; }
  Element half() const noexcept { return d_->half; }

  /// q mod 4 as 1 or 3.
  unsigned order_mod4() const noexcept { return d_->spec.q % 4; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  Element add_digits(Element a, Element b) const noexcept;

  std::shared_ptr<const detail::FieldData> d_;
};

/// Least-index eps with chi(1 + eps^2) = -1; such an element exists for
/// every odd q.
Element choose_epsilon(const Field& f);

bool is_prime(std::uint64_t n) noexcept;
/// (p, e) with q = p^e, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept;

}  // namespace isrg::gf
