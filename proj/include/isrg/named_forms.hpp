#pragma once

// The quadrics that arise when counting common neighbours of O and
// P = (1, eps, 0, ..., 0). Writing c = 1 + eps^2, N(y) = sum y_i^2 and
// L(y) = y_1 + eps*y_2:
//
//   gamma_zero_quadric       beta^2 = (y-P)-norm restricted to L = c/2,
//                            coordinates (beta, y_2..y_m, t), PG(m, q)
//   gamma_quadric(g)         (L - (c-g)/2)^2 - g*N = 0, coordinates
//                            (y_1..y_m, t), PG(m, q)
//   isotropic_special(g)     N = 0 on the hyperplane L = (c-g)/2, y_1 eliminated
//   beta_zero_special(g)     N = g on the hyperplane L = (c+g)/2, y_1 eliminated
//
// The last two use coordinates (y_2..y_m, t) in PG(m-1, q). Sections at
// t = 0 and beta = 0 are taken as principal submatrices.

#include <optional>
#include <string>
#include <vector>

#include "isrg/quadrics.hpp"

namespace isrg::quadrics {

QuadraticForm gamma_zero_quadric(const Field& f, unsigned m);
QuadraticForm gamma_zero_quadric_at_infinity(const Field& f, unsigned m);
/// beta = 0 section of gamma_zero_quadric, coordinates (y_2..y_m, t).
QuadraticForm gamma_zero_beta_zero(const Field& f, unsigned m);
QuadraticForm gamma_zero_beta_zero_at_infinity(const Field& f, unsigned m);

QuadraticForm gamma_quadric(const Field& f, unsigned m, Element gamma_sq);
QuadraticForm gamma_quadric_at_infinity(const Field& f, unsigned m, Element gamma_sq);

QuadraticForm isotropic_special_quadric(const Field& f, unsigned m, Element gamma_sq);
QuadraticForm beta_zero_special_quadric(const Field& f, unsigned m, Element gamma_sq);

/// Sum of squares in m variables.
QuadraticForm norm_form(const Field& f, unsigned m);

struct NamedForm {
  std::string label;
  std::optional<Element> gamma_sq;
  QuadraticForm form;
};

/// Every named quadric at (q, m), the gamma-dependent ones once per nonzero
/// square gamma^2.
std::vector<NamedForm> named_forms(const Field& f, unsigned m);

}  // namespace isrg::quadrics
