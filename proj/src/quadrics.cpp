#include "isrg/quadrics.hpp"

#include <string>
#include <utility>

namespace isrg::quadrics {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t bound) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > bound / base)
      throw Error(Errc::SizeBoundExceeded, "enumeration exceeds bound " + std::to_string(bound));
    out *= base;
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

}  // namespace

QuadraticForm::QuadraticForm(Field field, std::size_t n)
    : field_(std::move(field)), n_(n), a_(n * n, Element{0}) {}

QuadraticForm QuadraticForm::from_matrix(Field field, std::size_t n, std::vector<Element> entries) {
  if (entries.size() != n * n)
    throw Error(Errc::DimensionMismatch, "matrix needs " + std::to_string(n * n) + " entries");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (entries[i * n + j] != entries[j * n + i])
        throw Error(Errc::NotSymmetric, "matrix is not symmetric");
  QuadraticForm form(std::move(field), n);
  form.a_ = std::move(entries);
  return form;
}

QuadraticForm QuadraticForm::identity(Field field, std::size_t n) {
  QuadraticForm form(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) form.a_[i * n + i] = form.field_.one();
  return form;
}

QuadraticForm& QuadraticForm::add_term(std::size_t i, std::size_t j, Element coef) {
  if (i >= n_ || j >= n_) throw Error(Errc::DimensionMismatch, "term index out of range");
  const auto& f = field_;
  if (i == j) {
    a_[i * n_ + i] = f.add(a_[i * n_ + i], coef);
  } else {
    const Element h = f.mul(coef, f.half());
    a_[i * n_ + j] = f.add(a_[i * n_ + j], h);
    a_[j * n_ + i] = f.add(a_[j * n_ + i], h);
  }
  return *this;
}

QuadraticForm& QuadraticForm::add_square_of_linear(std::span<const Element> linear, Element scale) {
  if (linear.size() != n_) throw Error(Errc::DimensionMismatch, "linear form has wrong length");
  const auto& f = field_;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      a_[i * n_ + j] = f.add(a_[i * n_ + j], f.mul(scale, f.mul(linear[i], linear[j])));
  return *this;
}

Element QuadraticForm::evaluate(std::span<const Element> v) const {
  if (v.size() != n_)
    throw Error(Errc::DimensionMismatch,
                "vector length " + std::to_string(v.size()) + " != " + std::to_string(n_));
  const auto& f = field_;
  Element total = f.zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i].index == 0) continue;
    Element row = f.zero();
    const Element* a = a_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) row = f.add(row, f.mul(a[j], v[j]));
    total = f.add(total, f.mul(v[i], row));
  }
  return total;
}

QuadraticForm QuadraticForm::section(std::span<const std::size_t> keep) const {
  QuadraticForm out(field_, keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (keep[i] >= n_ || keep[j] >= n_) throw Error(Errc::DimensionMismatch, "section index out of range");
      out.a_[i * keep.size() + j] = a_[keep[i] * n_ + keep[j]];
    }
  return out;
}

QuadraticForm QuadraticForm::at_infinity() const {
  if (n_ == 0) throw Error(Errc::DimensionMismatch, "empty form has no section at infinity");
  std::vector<std::size_t> keep(n_ - 1);
  for (std::size_t i = 0; i + 1 < n_; ++i) keep[i] = i;
  return section(keep);
}

std::string_view kind_name(QuadricKind k) noexcept {
  switch (k) {
    case QuadricKind::Parabolic: return "parabolic";
    case QuadricKind::Hyperbolic: return "hyperbolic";
    case QuadricKind::Elliptic: return "elliptic";
    case QuadricKind::Singular: return "singular";
  }
  return "unknown";
}

Element determinant(const QuadraticForm& form) {
  const auto& f = form.field();
  const std::size_t n = form.dim();
  std::vector<Element> m(form.entries().begin(), form.entries().end());
  Element det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col].index == 0) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      det = f.neg(det);
    }
    const Element p = m[col * n + col];
    det = f.mul(det, p);
    const Element p_inv = f.inv(p);
    for (std::size_t row = col + 1; row < n; ++row) {
      const Element factor = f.mul(m[row * n + col], p_inv);
      if (factor.index == 0) continue;
      for (std::size_t j = col; j < n; ++j)
        m[row * n + j] = f.sub(m[row * n + j], f.mul(factor, m[col * n + j]));
    }
  }
  return det;
}

QuadricClass classify(const QuadraticForm& form) {
  const auto& f = form.field();
  QuadricClass out;
  out.det = determinant(form);
  out.r = form.dim() == 0 ? 0 : static_cast<unsigned>(form.dim() - 1);
  if (form.dim() == 0 || out.det.index == 0) {
    out.kind = QuadricKind::Singular;
    return out;
  }
  if (out.r % 2 == 0) {
    out.kind = QuadricKind::Parabolic;
    return out;
  }
  // (-1)^((r+1)/2) * det a nonzero square <=> hyperbolic.
  Element signed_det = out.det;
  if (((out.r + 1) / 2) % 2 == 1) signed_det = f.neg(signed_det);
  out.kind = f.chi(signed_det) == 1 ? QuadricKind::Hyperbolic : QuadricKind::Elliptic;
  return out;
}

std::uint64_t theoretical_point_count(const QuadricClass& cls, std::uint64_t q) {
  const unsigned r = cls.r;
  switch (cls.kind) {
    case QuadricKind::Parabolic:
      return (ipow(q, r / 2) + 1) * (ipow(q, r / 2) - 1) / (q - 1);
    case QuadricKind::Elliptic:
      return (ipow(q, (r + 1) / 2) + 1) * (ipow(q, (r - 1) / 2) - 1) / (q - 1);
    case QuadricKind::Hyperbolic:
      return (ipow(q, (r - 1) / 2) + 1) * (ipow(q, (r + 1) / 2) - 1) / (q - 1);
    case QuadricKind::Singular:
      break;
  }
  throw Error(Errc::SingularInput, "no point-count formula for a singular quadric");
}

ProjectivePoints::ProjectivePoints(Field field, unsigned r, std::uint64_t bound)
    : field_(std::move(field)), n_(r + 1) {
  const std::uint64_t q = field_.order();
  // (q^(r+1) - 1) / (q - 1), checked against the bound.
  const std::uint64_t top = checked_power(q, r, bound);
  std::uint64_t total = 0;
  for (std::uint64_t term = 1;; term *= q) {
    total += term;
    if (total > bound) throw Error(Errc::SizeBoundExceeded, "PG(r, q) exceeds bound " + std::to_string(bound));
    if (term == top) break;
  }
  size_ = total;
}

bool ProjectivePoints::next(std::vector<Element>& out) {
  if (done_) return false;
  const std::uint32_t q = field_.order();
  if (!started_) {
    started_ = true;
    lead_ = 0;
    tail_.assign(n_ - 1, 0);
  } else {
    // Odometer over the coordinates after the leading 1, last digit fastest.
    bool carried_out = true;
    for (std::size_t i = tail_.size(); i-- > 0;) {
      if (++tail_[i] < q) {
        carried_out = false;
        break;
      }
      tail_[i] = 0;
    }
    if (carried_out) {
      if (++lead_ >= n_) {
        done_ = true;
        return false;
      }
      tail_.assign(n_ - 1 - lead_, 0);
    }
  }
  out.assign(n_, Element{0});
  out[lead_] = field_.one();
  for (std::size_t i = 0; i < tail_.size(); ++i) out[lead_ + 1 + i] = Element{tail_[i]};
  return true;
}

std::vector<std::vector<Element>> enumerate_pg_points(const Field& field, unsigned r, std::uint64_t bound) {
  ProjectivePoints points(field, r, bound);
  std::vector<std::vector<Element>> out;
  out.reserve(points.size());
  std::vector<Element> p;
  while (points.next(p)) out.push_back(p);
  return out;
}

QuadricCensus count_projective_points(const QuadraticForm& form, std::uint64_t bound) {
  QuadricCensus census;
  census.cls = classify(form);
  if (form.dim() > 0) {
    ProjectivePoints points(form.field(), static_cast<unsigned>(form.dim() - 1), bound);
    std::vector<Element> p;
    while (points.next(p))
      if (form.evaluate(p).index == 0) ++census.exhaustive;
  }
  if (census.cls.kind != QuadricKind::Singular)
    census.theoretical = theoretical_point_count(census.cls, form.field().order());
  census.match = census.theoretical && *census.theoretical == census.exhaustive;
  return census;
}

std::uint64_t count_affine_solutions(const QuadraticForm& homogenized, std::uint64_t bound) {
  const std::size_t n = homogenized.dim();
  if (n == 0) throw Error(Errc::DimensionMismatch, "affine count needs a homogenizing coordinate");
  const std::uint32_t q = homogenized.field().order();
  const std::uint64_t total = checked_power(q, n - 1, bound);
  std::vector<Element> v(n, Element{0});
  v[n - 1] = homogenized.field().one();
  std::uint64_t zeros = 0;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    if (homogenized.evaluate(v).index == 0) ++zeros;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (++v[i].index < q) break;
      v[i].index = 0;
    }
  }
  return zeros;
}

}  // namespace isrg::quadrics
