#pragma once

// Quadratic forms over F_q, their classification in PG(r, q), and
// exhaustive point-counting oracles.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "isrg/gf.hpp"

namespace isrg::quadrics {

using gf::Element;
using gf::Field;

inline constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 24;

/// Symmetric n x n matrix over F_q; the quadric x^T A x = 0 lives in PG(n-1, q).
/// Cross terms c*x_i*x_j are stored as c/2 in both (i,j) and (j,i).
class QuadraticForm {
 public:
  QuadraticForm(Field field, std::size_t n);

  static QuadraticForm from_matrix(Field field, std::size_t n, std::vector<Element> entries);
  static QuadraticForm identity(Field field, std::size_t n);

  /// Adds coef * x_i * x_j to the polynomial (i == j gives a square term).
  QuadraticForm& add_term(std::size_t i, std::size_t j, Element coef);
  /// Adds scale * (sum_i l_i x_i)^2.
  QuadraticForm& add_square_of_linear(std::span<const Element> linear, Element scale);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  Element entry(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const Element> entries() const noexcept { return a_; }

  Element evaluate(std::span<const Element> v) const;

  /// Principal submatrix on the given coordinates, in the given order.
  QuadraticForm section(std::span<const std::size_t> keep) const;
  /// The t = 0 section, where t is the last coordinate.
  QuadraticForm at_infinity() const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<Element> a_;
};

enum class QuadricKind { Parabolic, Hyperbolic, Elliptic, Singular };

std::string_view kind_name(QuadricKind k) noexcept;

struct QuadricClass {
  QuadricKind kind = QuadricKind::Singular;
  Element det;
  unsigned r = 0;  // projective dimension
};

struct QuadricCensus {
  std::optional<std::uint64_t> theoretical;  // absent for singular forms
  std::uint64_t exhaustive = 0;
  bool match = false;
  QuadricClass cls;
};

Element determinant(const QuadraticForm& form);
QuadricClass classify(const QuadraticForm& form);
std::uint64_t theoretical_point_count(const QuadricClass& cls, std::uint64_t q);

/// Walks PG(r, q) one normalized representative at a time: leftmost nonzero
/// coordinate equal to 1, grouped by that position, lexicographic within.
class ProjectivePoints {
 public:
  ProjectivePoints(Field field, unsigned r, std::uint64_t bound = kDefaultEnumerationBound);

  bool next(std::vector<Element>& out);
  std::uint64_t size() const noexcept { return size_; }

 private:
  Field field_;
  std::size_t n_;
  std::size_t lead_ = 0;
  std::vector<std::uint32_t> tail_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t size_ = 0;
};

std::vector<std::vector<Element>> enumerate_pg_points(const Field& field, unsigned r,
                                                      std::uint64_t bound = kDefaultEnumerationBound);

QuadricCensus count_projective_points(const QuadraticForm& form,
                                      std::uint64_t bound = kDefaultEnumerationBound);

/// Affine zeros of the dehomogenization at t = 1, t being the last
/// coordinate: #{x in F_q^(n-1) : form(x, 1) = 0}.
std::uint64_t count_affine_solutions(const QuadraticForm& homogenized,
                                     std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace isrg::quadrics
