#include "isrg/named_forms.hpp"

namespace isrg::quadrics {

namespace {

Element c_of(const Field& f) { return f.add(f.one(), f.square(f.epsilon())); }

void require_even_m(unsigned m) {
  if (m < 2 || m % 2 != 0) throw Error(Errc::OddDimension, "dimension must be even and at least 2");
}

}  // namespace

QuadraticForm gamma_zero_quadric(const Field& f, unsigned m) {
  require_even_m(m);
  const Element c = c_of(f);
  const Element eps = f.epsilon();
  // beta^2 - c y2^2 + eps c y2 t - (c^2/4) t^2 - sum_{i>=3} y_i^2
  QuadraticForm form(f, m + 1);
  const std::size_t t = m;
  form.add_term(0, 0, f.one());
  form.add_term(1, 1, f.neg(c));
  form.add_term(1, t, f.mul(eps, c));
  form.add_term(t, t, f.neg(f.mul(f.square(f.half()), f.square(c))));
  for (std::size_t i = 2; i < m; ++i) form.add_term(i, i, f.neg(f.one()));
  return form;
}

QuadraticForm gamma_zero_quadric_at_infinity(const Field& f, unsigned m) {
  return gamma_zero_quadric(f, m).at_infinity();
}

QuadraticForm gamma_zero_beta_zero(const Field& f, unsigned m) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= m; ++i) keep.push_back(i);
  return gamma_zero_quadric(f, m).section(keep);
}

QuadraticForm gamma_zero_beta_zero_at_infinity(const Field& f, unsigned m) {
  return gamma_zero_beta_zero(f, m).at_infinity();
}

QuadraticForm gamma_quadric(const Field& f, unsigned m, Element gamma_sq) {
  require_even_m(m);
  const Element c = c_of(f);
  QuadraticForm form(f, m + 1);
  std::vector<Element> linear(m + 1, f.zero());
  linear[0] = f.one();
  linear[1] = f.epsilon();
  linear[m] = f.neg(f.mul(f.half(), f.sub(c, gamma_sq)));
  form.add_square_of_linear(linear, f.one());
  for (std::size_t i = 0; i < m; ++i) form.add_term(i, i, f.neg(gamma_sq));
  return form;
}

QuadraticForm gamma_quadric_at_infinity(const Field& f, unsigned m, Element gamma_sq) {
  return gamma_quadric(f, m, gamma_sq).at_infinity();
}

QuadraticForm isotropic_special_quadric(const Field& f, unsigned m, Element gamma_sq) {
  require_even_m(m);
  const Element c = c_of(f);
  const Element shift = f.sub(c, gamma_sq);
  const std::size_t t = m - 1;
  QuadraticForm form(f, m);
  form.add_term(0, 0, c);
  for (std::size_t i = 1; i < t; ++i) form.add_term(i, i, f.one());
  form.add_term(0, t, f.neg(f.mul(f.epsilon(), shift)));
  form.add_term(t, t, f.mul(f.square(f.half()), f.square(shift)));
  return form;
}

QuadraticForm beta_zero_special_quadric(const Field& f, unsigned m, Element gamma_sq) {
  require_even_m(m);
  const Element c = c_of(f);
  const Element shift = f.add(c, gamma_sq);
  const std::size_t t = m - 1;
  QuadraticForm form(f, m);
  form.add_term(0, 0, c);
  for (std::size_t i = 1; i < t; ++i) form.add_term(i, i, f.one());
  form.add_term(0, t, f.neg(f.mul(f.epsilon(), shift)));
  form.add_term(t, t, f.sub(f.mul(f.square(f.half()), f.square(shift)), gamma_sq));
  return form;
}

QuadraticForm norm_form(const Field& f, unsigned m) { return QuadraticForm::identity(f, m); }

std::vector<NamedForm> named_forms(const Field& f, unsigned m) {
  std::vector<NamedForm> out;
  out.push_back({"gamma_zero", std::nullopt, gamma_zero_quadric(f, m)});
  out.push_back({"gamma_zero_at_infinity", std::nullopt, gamma_zero_quadric_at_infinity(f, m)});
  out.push_back({"gamma_zero_beta_zero", std::nullopt, gamma_zero_beta_zero(f, m)});
  out.push_back({"gamma_zero_beta_zero_at_infinity", std::nullopt, gamma_zero_beta_zero_at_infinity(f, m)});
  for (const Element g : f.squares()) {
    out.push_back({"gamma", g, gamma_quadric(f, m, g)});
    out.push_back({"gamma_at_infinity", g, gamma_quadric_at_infinity(f, m, g)});
    out.push_back({"isotropic_special", g, isotropic_special_quadric(f, m, g)});
    out.push_back({"beta_zero_special", g, beta_zero_special_quadric(f, m, g)});
  }
  return out;
}

}  // namespace isrg::quadrics
