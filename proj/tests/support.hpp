#pragma once

// Reference implementations used only by tests. They share no code with
// the library: integers mod p, schoolbook polynomial products, a graph6
// reader and brute-force graph counts.

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "isrg/gf.hpp"
#include "isrg/quadrics.hpp"

namespace support {

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (n > 0) {
    if (n & 1) r = r * a % p;
    a = a * a % p;
    n >>= 1;
  }
  return r;
}

/// Euler's criterion.
inline int legendre(std::int64_t a, std::uint64_t p) {
  const auto r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Coefficients of the element with the given index, lowest degree first.
inline std::vector<std::uint32_t> digits(std::uint32_t index, std::uint32_t p, std::uint32_t e) {
  std::vector<std::uint32_t> d(e);
  for (auto& x : d) {
    x = index % p;
    index /= p;
  }
  return d;
}

inline std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p + d[i];
  return out;
}

/// Schoolbook product in F_p[t] / (modulus).
inline std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b, const isrg::gf::FieldSpec& s) {
  const auto da = digits(a, s.p, s.e), db = digits(b, s.p, s.e);
  std::vector<std::uint64_t> prod(2 * s.e, 0);
  for (std::uint32_t i = 0; i < s.e; ++i)
    for (std::uint32_t j = 0; j < s.e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % s.p;
  for (std::size_t k = prod.size(); k-- > s.e;) {
    const std::uint64_t lead = prod[k];
    if (lead == 0) continue;
    for (std::uint32_t i = 0; i <= s.e; ++i)
      prod[k - s.e + i] = (prod[k - s.e + i] + (s.p - lead) * s.modulus[i]) % s.p;
  }
  std::vector<std::uint32_t> out(s.e);
  for (std::uint32_t i = 0; i < s.e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return undigits(out, s.p);
}

inline std::uint32_t poly_add(std::uint32_t a, std::uint32_t b, const isrg::gf::FieldSpec& s) {
  auto da = digits(a, s.p, s.e);
  const auto db = digits(b, s.p, s.e);
  for (std::uint32_t i = 0; i < s.e; ++i) da[i] = (da[i] + db[i]) % s.p;
  return undigits(da, s.p);
}

/// Reference product for any supported field.
inline std::uint32_t ref_mul(const isrg::gf::Field& f, std::uint32_t a, std::uint32_t b) {
  const auto& s = f.spec();
  if (s.e == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % s.p);
  return poly_mul(a, b, s);
}

inline std::uint32_t ref_add(const isrg::gf::Field& f, std::uint32_t a, std::uint32_t b) {
  const auto& s = f.spec();
  if (s.e == 1) return (a + b) % s.p;
  return poly_add(a, b, s);
}

/// Squares computed by squaring every nonzero element.
inline std::set<std::uint32_t> square_set(const isrg::gf::Field& f) {
  std::set<std::uint32_t> out;
  for (std::uint32_t x = 1; x < f.order(); ++x) out.insert(ref_mul(f, x, x));
  return out;
}

struct Graph6 {
  std::uint32_t n = 0;
  std::vector<std::vector<bool>> adj;
};

/// Independent graph6 reader.
inline Graph6 decode_graph6(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.back() == '\n') s.pop_back();
  std::size_t pos = 0;
  auto take = [&]() -> std::uint32_t {
    if (pos >= s.size()) throw std::runtime_error("truncated graph6");
    const int c = static_cast<unsigned char>(s[pos++]) - 63;
    if (c < 0 || c > 63) throw std::runtime_error("bad graph6 byte");
    return static_cast<std::uint32_t>(c);
  };
  Graph6 g;
  if (!s.empty() && s[0] == '~') {
    ++pos;
    if (s.size() > 1 && s[1] == '~') throw std::runtime_error("8-byte size form unsupported");
    g.n = (take() << 12) | (take() << 6) | take();
  } else {
    g.n = take();
  }
  g.adj.assign(g.n, std::vector<bool>(g.n, false));
  std::uint32_t word = 0;
  int left = 0;
  for (std::uint32_t j = 1; j < g.n; ++j)
    for (std::uint32_t i = 0; i < j; ++i) {
      if (left == 0) {
        word = take();
        left = 6;
      }
      const bool bit = (word >> --left) & 1;
      g.adj[i][j] = g.adj[j][i] = bit;
    }
  if (pos != s.size()) throw std::runtime_error("trailing graph6 bytes");
  return g;
}

/// Uniformly random symmetric matrix, resampled until nonsingular.
inline isrg::quadrics::QuadraticForm random_nonsingular_form(const isrg::gf::Field& f, std::size_t n,
                                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
  for (;;) {
    std::vector<isrg::gf::Element> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = isrg::gf::Element{pick(rng)};
    auto form = isrg::quadrics::QuadraticForm::from_matrix(f, n, std::move(a));
    if (isrg::quadrics::determinant(form).index != 0) return form;
  }
}

/// Brute-force zero count of a form over PG(n-1, q): affine zeros minus the
/// origin, divided by q - 1.
inline std::uint64_t brute_projective_zeros(const isrg::quadrics::QuadraticForm& form) {
  const auto& f = form.field();
  const std::size_t n = form.dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.order();
  std::vector<isrg::gf::Element> v(n);
  std::uint64_t zeros = 0;
  for (std::uint64_t r = 1; r < total; ++r) {
    std::uint64_t x = r;
    for (auto& c : v) {
      c = isrg::gf::Element{static_cast<std::uint32_t>(x % f.order())};
      x /= f.order();
    }
    isrg::gf::Element s{0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        s = f.add(s, f.mul(form.entry(i, j), f.mul(v[i], v[j])));
    if (s.index == 0) ++zeros;
  }
  return zeros / (f.order() - 1);
}

}  // namespace support
