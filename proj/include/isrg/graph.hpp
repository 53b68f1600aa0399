#pragma once

// The integral-distance graph on AG(m, q): distinct points are adjacent when
// the squared distance sum (x_i - y_i)^2 is a square or zero.
//
// Adjacency depends only on the difference u - v, so the graph is stored as
// one character value per difference vector and all per-pair counts reduce
// to per-difference counts.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isrg/gf.hpp"

namespace isrg::graph {

using gf::Element;
using gf::Field;

inline constexpr std::uint64_t kDefaultVertexBound = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDenseVertexBound = std::uint64_t{1} << 12;

/// Base-q rank of a point; digit 0 is the first coordinate.
struct VertexId {
  std::uint32_t rank = 0;

  friend constexpr bool operator==(VertexId, VertexId) = default;
  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

struct DistanceCensus {
  std::uint64_t n0 = 0;      // nonzero isotropic differences
  std::uint64_t nplus = 0;   // square norm
  std::uint64_t nminus = 0;  // nonsquare norm

  std::uint64_t k() const noexcept { return n0 + nplus; }
};

class IntegralGraph {
 public:
  static IntegralGraph build(const Field& f, unsigned m, std::uint64_t bound = kDefaultVertexBound);

  const Field& field() const noexcept { return field_; }
  unsigned dimension() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return n_; }

  /// chi(sum d_i^2) for every difference vector d, indexed by rank.
  std::span<const std::int8_t> norm_chars() const noexcept { return norm_char_; }
  int norm_char(VertexId d) const;

  bool adjacent(VertexId u, VertexId v) const;

  VertexId rank(std::span<const Element> coords) const;
  std::vector<Element> unrank(VertexId v) const;
  /// u - v.
  VertexId difference(VertexId u, VertexId v) const;

  /// #{y : y ~ 0 and y ~ d}; by translation invariance, the number of common
  /// neighbours of every pair at difference d.
  std::uint64_t common_neighbors(VertexId d) const;

  /// Same vertex set with a replaced difference table. The table must keep
  /// entry 0 at 0.
  IntegralGraph with_norm_chars(std::vector<std::int8_t> table) const;

 private:
  IntegralGraph(Field f, unsigned m) : field_(std::move(f)), m_(m) {}
  friend class DenseGraph;

  void rebuild_mask();
  std::uint32_t sub_half(std::uint32_t a, std::uint32_t b) const;
  // lo[x] = x - base_lo and hi[x] = (x - base_hi) * q^(m/2) over half vectors,
  // so y - base has rank lo[y % H] + hi[y / H].
  void half_columns(VertexId base, std::vector<std::uint32_t>& lo, std::vector<std::uint32_t>& hi) const;
  void check_rank(VertexId v) const;

  Field field_;
  unsigned m_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t half_order_ = 0;  // q^(m/2)
  std::vector<std::int8_t> norm_char_;
  std::vector<std::uint8_t> neighbor_of_origin_;
};

DistanceCensus distance_census(const IntegralGraph& g);

enum class WitnessKind {
  IsotropicClassNotConstant,
  SquareClassNotConstant,
  NonsquareClassNotConstant,
  IsotropicDiffersFromSquare,
  IdentityFails,
};

struct Witness {
  WitnessKind kind = WitnessKind::IdentityFails;
  std::uint32_t difference = 0;  // rank of the offending difference vector
  std::int64_t observed = 0;
  std::int64_t expected = 0;
};

struct SrgCertificate {
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;  // over square-norm differences
  std::uint64_t mu = 0;      // over nonsquare-norm differences
  std::optional<std::uint64_t> sigma;  // over isotropic differences
  DistanceCensus census;
  bool is_srg = false;
  /// Set for m < 4, where no strong-regularity claim is made.
  bool informational_only = false;
  std::optional<Witness> witness;
};

/// Exhaustive certification: common_neighbors is evaluated for every nonzero
/// difference and checked constant on each of the three norm classes.
SrgCertificate certify_srg(const IntegralGraph& g, unsigned workers = 0);

/// Adjacency matrix as one bitset row per vertex.
class DenseGraph {
 public:
  explicit DenseGraph(std::uint32_t n);
  static DenseGraph from(const IntegralGraph& g, std::uint64_t bound = kDenseVertexBound);

  std::uint32_t order() const noexcept { return n_; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const;
  void set_edge(std::uint32_t u, std::uint32_t v, bool present);
  void flip_edge(std::uint32_t u, std::uint32_t v);
  std::span<const std::uint64_t> row(std::uint32_t u) const;
  std::uint64_t degree(std::uint32_t u) const;
  std::uint64_t common(std::uint32_t u, std::uint32_t v) const;

 private:
  std::uint32_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct PairViolation {
  std::uint32_t u = 0;
  std::uint32_t w = 0;
  std::uint64_t observed = 0;
  std::uint64_t expected = 0;
};

struct MatrixIdentityResult {
  bool holds = false;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;
  std::uint64_t mu = 0;
  std::optional<PairViolation> violation;
};

/// Checks A^2 = kI + lambda*A + mu*(J - I - A) entrywise. k, lambda and mu
/// are read off vertex 0 and its first neighbour / first non-neighbour.
MatrixIdentityResult matrix_identity_check(const DenseGraph& a, unsigned workers = 0);
MatrixIdentityResult matrix_identity_check(const IntegralGraph& g, unsigned workers = 0,
                                           std::uint64_t bound = kDenseVertexBound);

}  // namespace isrg::graph
