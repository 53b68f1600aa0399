#include "isrg/gf.hpp"

#include <string>

namespace isrg {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
    case Errc::SizeBoundExceeded: return "SizeBoundExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::SingularInput: return "SingularInput";
    case Errc::OddDimension: return "OddDimension";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::ZeroDifference: return "ZeroDifference";
    case Errc::ZeroS: return "ZeroS";
    case Errc::NotASquare: return "NotASquare";
    case Errc::NonIntegralLambda: return "NonIntegralLambda";
    case Errc::NonIntegralFormula: return "NonIntegralFormula";
    case Errc::OddAssembly: return "OddAssembly";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace isrg

namespace isrg::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, low degree first

Poly digits_of(std::uint32_t index, std::uint32_t p, std::uint32_t e) {
  Poly out(e);
  for (std::uint32_t i = 0; i < e; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

std::uint32_t index_of(const Poly& digits, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) index = index * p + digits[i];
  return index;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2) is the inverse.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t n = p - 2; n > 0; n >>= 1) {
    if (n & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - lead} * b[i]) % p);
    }
    a.pop_back();
  }
  return a;
}

bool has_monic_factor_of_degree(const Poly& f, std::uint32_t deg, std::uint32_t p) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint64_t lower = 0; lower < count; ++lower) {
    Poly d = digits_of(static_cast<std::uint32_t>(lower), p, deg);
    d.push_back(1);
    Poly r = poly_mod(f, d, p);
    bool zero = true;
    for (auto c : r) zero = zero && c == 0;
    if (zero) return true;
  }
  return false;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t e = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t deg = 1; deg <= e / 2; ++deg)
    if (has_monic_factor_of_degree(f, deg, p)) return false;
  return true;
}

Poly find_modulus(std::uint32_t p, std::uint32_t e, std::uint32_t q) {
  for (std::uint32_t lower = 0; lower < q; ++lower) {
    Poly f = digits_of(lower, p, e);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::NoIrreducibleFound,
              "no irreducible polynomial of degree " + std::to_string(e) + " over F_" + std::to_string(p));
}

std::uint32_t poly_mul_index(std::uint32_t a, std::uint32_t b, const FieldSpec& s) {
  const Poly x = digits_of(a, s.p, s.e);
  const Poly y = digits_of(b, s.p, s.e);
  Poly prod(2 * s.e - 1, 0);
  for (std::uint32_t i = 0; i < s.e; ++i)
    for (std::uint32_t j = 0; j < s.e; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % s.p);
  Poly r = poly_mod(std::move(prod), s.modulus, s.p);
  r.resize(s.e, 0);
  return index_of(r, s.p);
}

std::uint32_t add_index(std::uint32_t a, std::uint32_t b, std::uint32_t p, std::uint32_t e) {
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    const std::uint32_t da = a % p, db = b % p;
    a /= p;
    b /= p;
    out += ((da + db) % p) * scale;
    scale *= p;
  }
  return out;
}

std::uint32_t neg_index(std::uint32_t a, std::uint32_t p, std::uint32_t e) {
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    const std::uint32_t da = a % p;
    a /= p;
    out += ((p - da) % p) * scale;
    scale *= p;
  }
  return out;
}

// Log/antilog tables from the least-index primitive element.
void build_log_tables(detail::FieldData& d) {
  const std::uint32_t q = d.spec.q;
  d.log.assign(q, 0);
  d.exp.assign(q - 1, 0);
  for (std::uint32_t g = 2; g < q; ++g) {
    std::uint32_t x = 1;
    std::uint32_t k = 0;
    bool primitive = true;
    for (; k < q - 1; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      d.exp[k] = x;
      x = poly_mul_index(x, g, d.spec);
    }
    if (primitive && x == 1) {
      for (std::uint32_t i = 0; i < q - 1; ++i) d.log[d.exp[i]] = i;
      return;
    }
  }
  throw Error(Errc::NoIrreducibleFound, "no primitive element found");
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::pair{p, e};
}

Field Field::make(std::uint64_t p, std::uint32_t e, std::uint64_t order_bound) {
  if (p < 2) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(Errc::EvenCharacteristic, "characteristic must be odd");
  if (e == 0) throw Error(Errc::InvalidArgument, "extension degree must be at least 1");
  if (p > order_bound)
    throw Error(Errc::SizeBoundExceeded, "field order exceeds bound " + std::to_string(order_bound));
  if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > order_bound)
      throw Error(Errc::SizeBoundExceeded, "field order exceeds bound " + std::to_string(order_bound));
  }

  auto d = std::make_shared<detail::FieldData>();
  auto& s = d->spec;
  s.p = static_cast<std::uint32_t>(p);
  s.e = e;
  s.q = static_cast<std::uint32_t>(q);
  if (e > 1) {
    s.modulus = find_modulus(s.p, e, s.q);
    build_log_tables(*d);
  }

  d->neg.resize(s.q);
  d->inv.assign(s.q, 0);
  for (std::uint32_t a = 0; a < s.q; ++a) d->neg[a] = e == 1 ? (s.p - a) % s.p : neg_index(a, s.p, e);
  for (std::uint32_t a = 1; a < s.q; ++a)
    d->inv[a] = e == 1 ? inv_mod_p(a, s.p) : d->exp[(s.q - 1 - d->log[a]) % (s.q - 1)];

  if (s.q <= kTableOrderLimit) {
    d->add.resize(std::size_t{s.q} * s.q);
    d->mul.resize(std::size_t{s.q} * s.q);
    for (std::uint32_t a = 0; a < s.q; ++a) {
      for (std::uint32_t b = 0; b < s.q; ++b) {
        const std::size_t at = std::size_t{a} * s.q + b;
        if (e == 1) {
          d->add[at] = (a + b) % s.p;
          d->mul[at] = a * b % s.p;
        } else {
          d->add[at] = add_index(a, b, s.p, e);
          d->mul[at] = (a == 0 || b == 0) ? 0 : d->exp[(d->log[a] + d->log[b]) % (s.q - 1)];
        }
      }
    }
  }

  Field f(d);
  d->chi.assign(s.q, -1);
  d->chi[0] = 0;
  for (std::uint32_t x = 1; x < s.q; ++x) d->chi[f.square({x}).index] = 1;
  for (std::uint32_t x = 1; x < s.q; ++x)
    (d->chi[x] > 0 ? d->squares : d->nonsquares).push_back({x});
  d->half = f.inv(f.from_integer(2));
  d->epsilon = choose_epsilon(f);
  return f;
}

Field Field::of_order(std::uint64_t q, std::uint64_t order_bound) {
  if (q % 2 == 0) throw Error(Errc::EvenCharacteristic, "q must be odd");
  const auto pe = prime_power(q);
  if (!pe) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  return make(pe->first, pe->second, order_bound);
}

Element Field::element(std::uint64_t index) const {
  if (index >= order())
    throw Error(Errc::RankOutOfRange, "element index " + std::to_string(index) + " out of range");
  return {static_cast<std::uint32_t>(index)};
}

Element Field::from_integer(std::int64_t n) const noexcept {
  const auto p = static_cast<std::int64_t>(characteristic());
  return {static_cast<std::uint32_t>(((n % p) + p) % p)};
}

Element Field::add_digits(Element a, Element b) const noexcept {
  return {add_index(a.index, b.index, d_->spec.p, d_->spec.e)};
}

Element Field::inv(Element a) const {
  if (a.index == 0) throw Error(Errc::DivisionByZero, "division by zero");
  return {d_->inv[a.index]};
}

Element Field::pow(Element a, std::uint64_t n) const noexcept {
  Element result = one();
  while (n > 0) {
    if (n & 1) result = mul(result, a);
    a = mul(a, a);
    n >>= 1;
  }
  return result;
}

Element Field::arith(Element a, Element b, Op op) const {
  switch (op) {
    case Op::Add: return add(a, b);
    case Op::Sub: return sub(a, b);
    case Op::Mul: return mul(a, b);
    case Op::Div: return div(a, b);
    case Op::Neg: return neg(a);
    case Op::Inv: return inv(a);
  }
  return a;
}

Element choose_epsilon(const Field& f) {
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    const Element e{x};
    if (f.chi(f.add(f.one(), f.square(e))) == -1) return e;
  }
  // Unreachable for odd q: 1 + x^2 takes (q+1)/2 distinct values.
  throw Error(Errc::InvalidArgument, "no epsilon with 1 + eps^2 a nonsquare");
}

}  // namespace isrg::gf
