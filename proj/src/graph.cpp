#include "isrg/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "isrg/parallel.hpp"

namespace isrg::graph {

IntegralGraph IntegralGraph::build(const Field& f, unsigned m, std::uint64_t bound) {
  if (m < 2 || m % 2 != 0)
    throw Error(Errc::OddDimension, "dimension m must be even and at least 2, got " + std::to_string(m));
  const std::uint64_t q = f.order();
  std::uint64_t n = 1;
  for (unsigned i = 0; i < m; ++i) {
    n *= q;
    if (n > bound)
      throw Error(Errc::SizeBoundExceeded, "q^m exceeds vertex bound " + std::to_string(bound));
  }

  IntegralGraph g(f, m);
  g.n_ = static_cast<std::uint32_t>(n);
  std::uint64_t half = 1;
  for (unsigned i = 0; i < m / 2; ++i) half *= q;
  g.half_order_ = static_cast<std::uint32_t>(half);

  // Norms of half vectors; a full norm is the sum of its two halves.
  std::vector<Element> half_norm(half);
  for (std::uint32_t a = 0; a < half; ++a) {
    Element s = f.zero();
    std::uint32_t x = a;
    for (unsigned i = 0; i < m / 2; ++i) {
      s = f.add(s, f.square(Element{static_cast<std::uint32_t>(x % q)}));
      x /= static_cast<std::uint32_t>(q);
    }
    half_norm[a] = s;
  }
  g.norm_char_.resize(n);
  for (std::uint32_t hi = 0; hi < half; ++hi)
    for (std::uint32_t lo = 0; lo < half; ++lo)
      g.norm_char_[std::size_t{hi} * half + lo] =
          static_cast<std::int8_t>(f.chi(f.add(half_norm[lo], half_norm[hi])));
  g.rebuild_mask();
  return g;
}

void IntegralGraph::rebuild_mask() {
  neighbor_of_origin_.resize(n_);
  for (std::uint32_t d = 0; d < n_; ++d) neighbor_of_origin_[d] = norm_char_[d] >= 0 ? 1 : 0;
  neighbor_of_origin_[0] = 0;
}

IntegralGraph IntegralGraph::with_norm_chars(std::vector<std::int8_t> table) const {
  if (table.size() != n_) throw Error(Errc::DimensionMismatch, "norm table has wrong length");
  IntegralGraph g = *this;
  g.norm_char_ = std::move(table);
  g.rebuild_mask();
  return g;
}

void IntegralGraph::check_rank(VertexId v) const {
  if (v.rank >= n_)
    throw Error(Errc::RankOutOfRange, "vertex rank " + std::to_string(v.rank) + " out of range");
}

std::uint32_t IntegralGraph::sub_half(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t q = field_.order();
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < m_ / 2; ++i) {
    out += field_.sub(Element{a % q}, Element{b % q}).index * scale;
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

void IntegralGraph::half_columns(VertexId base, std::vector<std::uint32_t>& lo,
                                 std::vector<std::uint32_t>& hi) const {
  const std::uint32_t h = half_order_;
  const std::uint32_t base_lo = base.rank % h, base_hi = base.rank / h;
  lo.resize(h);
  hi.resize(h);
  for (std::uint32_t x = 0; x < h; ++x) {
    lo[x] = sub_half(x, base_lo);
    hi[x] = sub_half(x, base_hi) * h;
  }
}

int IntegralGraph::norm_char(VertexId d) const {
  check_rank(d);
  return norm_char_[d.rank];
}

bool IntegralGraph::adjacent(VertexId u, VertexId v) const {
  check_rank(u);
  check_rank(v);
  if (u == v) return false;
  return norm_char_[difference(u, v).rank] >= 0;
}

VertexId IntegralGraph::rank(std::span<const Element> coords) const {
  if (coords.size() != m_) throw Error(Errc::DimensionMismatch, "point has wrong dimension");
  std::uint32_t r = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i].index >= field_.order()) throw Error(Errc::RankOutOfRange, "coordinate out of range");
    r = r * field_.order() + coords[i].index;
  }
  return {r};
}

std::vector<Element> IntegralGraph::unrank(VertexId v) const {
  check_rank(v);
  std::vector<Element> out(m_);
  std::uint32_t r = v.rank;
  for (unsigned i = 0; i < m_; ++i) {
    out[i] = Element{r % field_.order()};
    r /= field_.order();
  }
  return out;
}

VertexId IntegralGraph::difference(VertexId u, VertexId v) const {
  check_rank(u);
  check_rank(v);
  const std::uint32_t h = half_order_;
  return {sub_half(u.rank % h, v.rank % h) + h * sub_half(u.rank / h, v.rank / h)};
}

std::uint64_t IntegralGraph::common_neighbors(VertexId d) const {
  check_rank(d);
  if (d.rank == 0) throw Error(Errc::ZeroDifference, "common_neighbors needs a nonzero difference");
  std::vector<std::uint32_t> lo, hi;
  half_columns(d, lo, hi);
  const std::uint8_t* mask = neighbor_of_origin_.data();
  const std::uint32_t h = half_order_;
  std::uint64_t count = 0;
  for (std::uint32_t yh = 0; yh < h; ++yh) {
    const std::uint8_t* row = mask + std::size_t{yh} * h;
    const std::uint8_t* shifted = mask + hi[yh];
    std::uint32_t acc = 0;
    for (std::uint32_t yl = 0; yl < h; ++yl) acc += row[yl] & shifted[lo[yl]];
    count += acc;
  }
  return count;
}

DistanceCensus distance_census(const IntegralGraph& g) {
  DistanceCensus c;
  const auto table = g.norm_chars();
  for (std::size_t d = 1; d < table.size(); ++d) {
    if (table[d] == 0)
      ++c.n0;
    else if (table[d] > 0)
      ++c.nplus;
    else
      ++c.nminus;
  }
  return c;
}

SrgCertificate certify_srg(const IntegralGraph& g, unsigned workers) {
  SrgCertificate cert;
  cert.v = g.order();
  cert.census = distance_census(g);
  cert.k = cert.census.k();
  cert.informational_only = g.dimension() < 4;

  std::vector<std::uint64_t> counts(g.order(), 0);
  parallel_for(g.order(), workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t d = std::max<std::uint64_t>(begin, 1); d < end; ++d)
      counts[d] = g.common_neighbors(VertexId{static_cast<std::uint32_t>(d)});
  });

  // Class 0: isotropic, 1: square norm, 2: nonsquare norm.
  std::optional<std::uint64_t> reference[3];
  std::uint32_t first_of_class[3] = {0, 0, 0};
  constexpr WitnessKind kinds[3] = {WitnessKind::IsotropicClassNotConstant,
                                    WitnessKind::SquareClassNotConstant,
                                    WitnessKind::NonsquareClassNotConstant};
  const auto table = g.norm_chars();
  for (std::uint32_t d = 1; d < g.order(); ++d) {
    const int cls = table[d] == 0 ? 0 : (table[d] > 0 ? 1 : 2);
    if (!reference[cls]) {
      reference[cls] = counts[d];
      first_of_class[cls] = d;
    } else if (counts[d] != *reference[cls] && !cert.witness) {
      cert.witness = Witness{kinds[cls], d, static_cast<std::int64_t>(counts[d]),
                             static_cast<std::int64_t>(*reference[cls])};
    }
  }
  cert.sigma = reference[0];
  cert.lambda = reference[1].value_or(0);
  cert.mu = reference[2].value_or(0);

  if (!cert.witness && reference[0] && reference[1] && *reference[0] != *reference[1]) {
    cert.witness = Witness{WitnessKind::IsotropicDiffersFromSquare, first_of_class[0],
                           static_cast<std::int64_t>(*reference[0]), static_cast<std::int64_t>(*reference[1])};
  }
  if (!cert.witness) {
    const auto v = static_cast<std::int64_t>(cert.v), k = static_cast<std::int64_t>(cert.k);
    const auto lambda = static_cast<std::int64_t>(cert.lambda), mu = static_cast<std::int64_t>(cert.mu);
    const std::int64_t lhs = (v - k - 1) * mu, rhs = k * (k - lambda - 1);
    if (lhs != rhs) cert.witness = Witness{WitnessKind::IdentityFails, 0, lhs, rhs};
  }
  cert.is_srg = !cert.witness.has_value();
  return cert;
}

// ---------------------------------------------------------------------------
// Dense bitset adjacency
// ---------------------------------------------------------------------------

DenseGraph::DenseGraph(std::uint32_t n) : n_(n), words_((n + 63) / 64), bits_(std::size_t{n} * words_, 0) {}

DenseGraph DenseGraph::from(const IntegralGraph& g, std::uint64_t bound) {
  if (g.order() > bound)
    throw Error(Errc::SizeBoundExceeded, "dense adjacency limited to " + std::to_string(bound) + " vertices");
  DenseGraph a(g.order());
  const std::uint32_t h = g.half_order_;
  std::vector<std::uint32_t> lo, hi;
  for (std::uint32_t u = 0; u < g.order(); ++u) {
    g.half_columns(VertexId{u}, lo, hi);
    std::uint64_t* row = a.bits_.data() + std::size_t{u} * a.words_;
    for (std::uint32_t v = 0; v < g.order(); ++v)
      if (g.neighbor_of_origin_[lo[v % h] + hi[v / h]]) row[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  return a;
}

bool DenseGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
  return (bits_[std::size_t{u} * words_ + v / 64] >> (v % 64)) & 1;
}

void DenseGraph::set_edge(std::uint32_t u, std::uint32_t v, bool present) {
  if (u >= n_ || v >= n_) throw Error(Errc::RankOutOfRange, "vertex out of range");
  const std::uint64_t bu = std::uint64_t{1} << (u % 64), bv = std::uint64_t{1} << (v % 64);
  auto& x = bits_[std::size_t{u} * words_ + v / 64];
  auto& y = bits_[std::size_t{v} * words_ + u / 64];
  x = present ? (x | bv) : (x & ~bv);
  y = present ? (y | bu) : (y & ~bu);
}

void DenseGraph::flip_edge(std::uint32_t u, std::uint32_t v) { set_edge(u, v, !adjacent(u, v)); }

std::span<const std::uint64_t> DenseGraph::row(std::uint32_t u) const {
  return {bits_.data() + std::size_t{u} * words_, words_};
}

std::uint64_t DenseGraph::degree(std::uint32_t u) const {
  std::uint64_t d = 0;
  for (auto w : row(u)) d += std::popcount(w);
  return d;
}

std::uint64_t DenseGraph::common(std::uint32_t u, std::uint32_t v) const {
  const auto a = row(u), b = row(v);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words_; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

MatrixIdentityResult matrix_identity_check(const DenseGraph& a, unsigned workers) {
  MatrixIdentityResult res;
  const std::uint32_t n = a.order();
  if (n == 0) {
    res.holds = true;
    return res;
  }
  res.k = a.degree(0);
  for (std::uint32_t w = 1; w < n; ++w) {
    if (a.adjacent(0, w)) {
      res.lambda = a.common(0, w);
      break;
    }
  }
  for (std::uint32_t w = 1; w < n; ++w) {
    if (!a.adjacent(0, w)) {
      res.mu = a.common(0, w);
      break;
    }
  }

  if (workers == 0) workers = hardware_workers();
  std::vector<std::optional<PairViolation>> first(std::max(1u, workers));
  const std::uint64_t chunk = (n + first.size() - 1) / first.size();
  parallel_for(first.size(), workers, [&](std::uint64_t wb, std::uint64_t we) {
    for (std::uint64_t w = wb; w < we; ++w) {
      const std::uint64_t ub = std::min<std::uint64_t>(n, w * chunk), ue = std::min<std::uint64_t>(n, ub + chunk);
      for (std::uint64_t u = ub; u < ue && !first[w]; ++u) {
        const auto uu = static_cast<std::uint32_t>(u);
        // (A^2)_uu is the degree; a loop would also show up here.
        const std::uint64_t deg = a.common(uu, uu);
        if (deg != res.k || a.adjacent(uu, uu)) {
          first[w] = PairViolation{uu, uu, deg, res.k};
          break;
        }
        for (std::uint32_t x = uu + 1; x < n; ++x) {
          const std::uint64_t expected = a.adjacent(uu, x) ? res.lambda : res.mu;
          const std::uint64_t observed = a.common(uu, x);
          if (observed != expected) {
            first[w] = PairViolation{uu, x, observed, expected};
            break;
          }
        }
      }
    }
  });
  for (const auto& v : first) {
    if (v) {
      res.violation = v;
      break;
    }
  }
  res.holds = !res.violation.has_value();
  return res;
}

MatrixIdentityResult matrix_identity_check(const IntegralGraph& g, unsigned workers, std::uint64_t bound) {
  return matrix_identity_check(DenseGraph::from(g, bound), workers);
}

}  // namespace isrg::graph
