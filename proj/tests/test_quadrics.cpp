#include <doctest.h>

#include <random>
#include <set>

#include "isrg/lemmas.hpp"
#include "isrg/named_forms.hpp"
#include "isrg/quadrics.hpp"
#include "support.hpp"

using isrg::Errc;
using isrg::Error;
using isrg::gf::Element;
using isrg::gf::Field;
using namespace isrg::quadrics;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isrg::Error");
  return Errc::InvalidArgument;
}

using Matrix = std::vector<Element>;

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b, std::size_t n) {
  Matrix c(n * n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = f.add(c[i * n + j], f.mul(a[i * n + k], b[k * n + j]));
  return c;
}

Matrix transpose(const Matrix& a, std::size_t n) {
  Matrix t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

Matrix random_matrix(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
  Matrix m(n * n);
  for (auto& x : m) x = Element{pick(rng)};
  return m;
}

Element det_of(const Field& f, const Matrix& m, std::size_t n) {
  // Cofactor expansion along the first row.
  if (n == 1) return m[0];
  Element total = f.zero();
  for (std::size_t col = 0; col < n; ++col) {
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) minor.push_back(m[i * n + j]);
    const Element term = f.mul(m[col], det_of(f, minor, n - 1));
    total = col % 2 == 0 ? f.add(total, term) : f.sub(total, term);
  }
  return total;
}

}  // namespace

TEST_CASE("form construction and evaluation") {
  const Field f = Field::of_order(5);
  CHECK(code_of([&] { QuadraticForm::from_matrix(f, 2, {Element{1}, Element{2}, Element{3}, Element{1}}); }) ==
        Errc::NotSymmetric);
  CHECK(code_of([&] { QuadraticForm::from_matrix(f, 2, {Element{1}}); }) == Errc::DimensionMismatch);
  const auto id = QuadraticForm::identity(f, 3);
  const std::vector<Element> v{Element{1}, Element{2}, Element{3}};
  CHECK(id.evaluate(v).index == (1 + 4 + 9) % 5);
  CHECK(code_of([&] { id.evaluate(std::vector<Element>{Element{1}}); }) == Errc::DimensionMismatch);

  // x0*x1 as a term halves into the off-diagonal entries.
  QuadraticForm h(f, 2);
  h.add_term(0, 1, f.one());
  CHECK(h.entry(0, 1) == f.half());
  CHECK(h.evaluate(std::vector<Element>{Element{2}, Element{3}}).index == 1);
  CHECK(code_of([&] { h.add_term(0, 2, f.one()); }) == Errc::DimensionMismatch);

  // (x0 + 2 x1)^2
  QuadraticForm s(f, 2);
  s.add_square_of_linear(std::vector<Element>{Element{1}, Element{2}}, f.one());
  CHECK(s.evaluate(std::vector<Element>{Element{1}, Element{1}}).index == 9 % 5);
  CHECK(determinant(s).index == 0);
  CHECK(classify(s).kind == QuadricKind::Singular);
}

TEST_CASE("sections are principal submatrices") {
  const Field f = Field::of_order(7);
  std::mt19937_64 rng(3);
  const auto form = support::random_nonsingular_form(f, 4, rng);
  const auto inf = form.at_infinity();
  REQUIRE(inf.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(inf.entry(i, j) == form.entry(i, j));
  const std::vector<std::size_t> keep{3, 1};
  const auto sec = form.section(keep);
  CHECK(sec.entry(0, 1) == form.entry(3, 1));
  CHECK(code_of([&] { form.section(std::vector<std::size_t>{9}); }) == Errc::DimensionMismatch);
}

TEST_CASE("projective points are normalized and distinct") {
  for (std::uint64_t q : {3, 5, 9}) {
    const Field f = Field::of_order(q);
    for (unsigned r = 0; r <= 3; ++r) {
      const auto pts = enumerate_pg_points(f, r);
      std::uint64_t expected = 0, term = 1;
      for (unsigned i = 0; i <= r; ++i, term *= q) expected += term;
      CHECK(pts.size() == expected);
      std::set<std::vector<std::uint32_t>> seen;
      for (const auto& p : pts) {
        std::size_t lead = 0;
        while (p[lead].index == 0) ++lead;
        CHECK(p[lead] == f.one());
        std::vector<std::uint32_t> key;
        for (auto e : p) key.push_back(e.index);
        seen.insert(key);
      }
      CHECK(seen.size() == expected);
    }
  }
  CHECK(code_of([] { ProjectivePoints(Field::of_order(3), 20, 1000); }) == Errc::SizeBoundExceeded);
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {3, 5, 9, 25}) {
    const Field f = Field::of_order(q);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 30; ++trial) {
        const auto form = support::random_nonsingular_form(f, n, rng);
        const Matrix a(form.entries().begin(), form.entries().end());
        CHECK(determinant(form) == det_of(f, a, n));
        const Matrix p = random_matrix(f, n, rng);
        const Matrix congruent = multiply(f, transpose(p, n), multiply(f, a, p, n), n);
        const auto g = QuadraticForm::from_matrix(f, n, congruent);
        CHECK(determinant(g) == f.mul(f.square(det_of(f, p, n)), determinant(form)));
      }
  }
}

TEST_CASE("classification is invariant under congruence") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const Field f = Field::of_order(q);
    for (std::size_t n = 2; n <= 5; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        const auto form = support::random_nonsingular_form(f, n, rng);
        Matrix p;
        do p = random_matrix(f, n, rng);
        while (det_of(f, p, n).index == 0);
        const Matrix a(form.entries().begin(), form.entries().end());
        const auto g = QuadraticForm::from_matrix(f, n, multiply(f, transpose(p, n), multiply(f, a, p, n), n));
        CHECK(classify(g).kind == classify(form).kind);
      }
  }
}

TEST_CASE("known quadrics") {
  for (std::uint64_t q : {3, 5, 7, 9, 11}) {
    const Field f = Field::of_order(q);
    // Conic: q + 1 points.
    auto conic = count_projective_points(QuadraticForm::identity(f, 3));
    CHECK(conic.cls.kind == QuadricKind::Parabolic);
    CHECK(conic.exhaustive == q + 1);
    CHECK(conic.match);
    // x0 x1 + x2 x3: hyperbolic, (q + 1)^2 points.
    QuadraticForm hyp(f, 4);
    hyp.add_term(0, 1, f.one()).add_term(2, 3, f.one());
    const auto h = count_projective_points(hyp);
    CHECK(h.cls.kind == QuadricKind::Hyperbolic);
    CHECK(h.exhaustive == (q + 1) * (q + 1));
    // x0 x1 + x2^2 - n x3^2 with n a nonsquare: elliptic, q^2 + 1 points.
    QuadraticForm ell(f, 4);
    ell.add_term(0, 1, f.one()).add_term(2, 2, f.one()).add_term(3, 3, f.neg(f.nonsquares().front()));
    const auto e = count_projective_points(ell);
    CHECK(e.cls.kind == QuadricKind::Elliptic);
    CHECK(e.exhaustive == q * q + 1);
  }
}

TEST_CASE("random nonsingular forms match the point-count formulas") {
  std::mt19937_64 rng(2024);
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const Field f = Field::of_order(q);
    for (std::size_t n = 2; n <= 6; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        const auto form = support::random_nonsingular_form(f, n, rng);
        const auto census = count_projective_points(form);
        REQUIRE(census.theoretical);
        CHECK(census.match);
        if (n <= 4) CHECK(census.exhaustive == support::brute_projective_zeros(form));
      }
  }
}

TEST_CASE("singular forms have no formula") {
  const Field f = Field::of_order(3);
  QuadraticForm z(f, 3);
  z.add_term(0, 0, f.one());
  const auto census = count_projective_points(z);
  CHECK(census.cls.kind == QuadricKind::Singular);
  CHECK_FALSE(census.theoretical);
  CHECK_FALSE(census.match);
  CHECK(census.exhaustive == 4);  // the line x0 = 0
  CHECK(code_of([&] { theoretical_point_count(census.cls, 3); }) == Errc::SingularInput);
}

TEST_CASE("affine solutions with the last coordinate fixed") {
  const Field f = Field::of_order(5);
  // x^2 + y^2 - t^2 on t = 1: the affine circle has q - 1 points for q = 1 mod 4.
  QuadraticForm circle(f, 3);
  circle.add_term(0, 0, f.one()).add_term(1, 1, f.one()).add_term(2, 2, f.neg(f.one()));
  CHECK(count_affine_solutions(circle) == 4);
  CHECK(code_of([&] { count_affine_solutions(QuadraticForm(f, 0)); }) == Errc::DimensionMismatch);
}

TEST_CASE("the section at infinity of the gamma-zero quadric at (3, 4) is hyperbolic") {
  const Field f = Field::of_order(3);
  const auto census = count_projective_points(gamma_zero_quadric_at_infinity(f, 4));
  CHECK(census.cls.kind == QuadricKind::Hyperbolic);
  CHECK(census.exhaustive == 16);
  CHECK(census.match);
}

TEST_CASE("beta-zero section agrees with the displayed form") {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const Field f = Field::of_order(q);
    for (unsigned m : {4u, 6u}) {
      if (q > 5 && m == 6) continue;
      const Element eps = f.epsilon();
      const Element c = f.add(f.one(), f.square(eps));
      // -c y2^2 + eps c y2 t - c^2 t^2 / 4 + sum y_i^2, coordinates (y2..ym, t)
      QuadraticForm literal(f, m);
      literal.add_term(0, 0, f.neg(c));
      literal.add_term(0, m - 1, f.mul(eps, c));
      literal.add_term(m - 1, m - 1, f.neg(f.mul(f.square(f.half()), f.square(c))));
      for (unsigned i = 1; i + 1 < m; ++i) literal.add_term(i, i, f.one());
      const auto ours = gamma_zero_beta_zero(f, m);
      CHECK(determinant(ours) == determinant(literal));
      CHECK(classify(ours).kind == classify(literal).kind);
      CHECK(count_projective_points(ours).exhaustive == count_projective_points(literal).exhaustive);
    }
  }
}

TEST_CASE("gamma quadric determinant is a nonzero square") {
  for (std::uint64_t q : {3, 5, 7, 9, 11}) {
    const Field f = Field::of_order(q);
    const Element c = f.add(f.one(), f.square(f.epsilon()));
    for (unsigned m : {4u, 6u})
      for (const Element g : f.squares()) {
        const Element det = determinant(gamma_quadric(f, m, g));
        const Element expected =
            f.mul(f.mul(f.square(f.half()), f.pow(f.neg(g), m)), f.square(f.sub(c, g)));
        CHECK(det == expected);
        CHECK(f.chi(det) == 1);
      }
  }
}

TEST_CASE("named forms match their formulas across the battery") {
  for (auto [q, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 4}, {5, 4}, {7, 4}, {9, 4}, {3, 6}}) {
    const Field f = Field::of_order(q);
    const auto forms = named_forms(f, m);
    CHECK(forms.size() == 4 + 4 * f.squares().size());
    for (const auto& nf : forms) {
      CAPTURE(nf.label);
      const auto census = count_projective_points(nf.form);
      CHECK(census.match);
    }
  }
}

TEST_CASE("special quadrics sum to r and ell") {
  for (auto [q, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 4}, {5, 4}, {7, 4}, {9, 4}, {3, 6}}) {
    CAPTURE(q);
    CAPTURE(m);
    const Field f = Field::of_order(q);
    std::uint64_t r = 0, ell = 0;
    for (const Element g : f.squares()) {
      r += count_affine_solutions(isotropic_special_quadric(f, m, g));
      ell += count_affine_solutions(beta_zero_special_quadric(f, m, g));
    }
    CHECK(static_cast<std::int64_t>(r) == isrg::lemmas::special_r_formula(q, m));
    CHECK(static_cast<std::int64_t>(ell) == isrg::lemmas::special_ell_formula(q, m));
  }
}
