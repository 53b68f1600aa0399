#include "isrg/lemmas.hpp"

#include <array>
#include <set>
#include <span>
#include <string>

#include "isrg/graph.hpp"
#include "isrg/parallel.hpp"
#include "isrg/params.hpp"

namespace isrg::lemmas {

namespace {

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

std::int64_t halve(std::int64_t x, const char* what) {
  if (x % 2 != 0) throw Error(Errc::NonIntegralFormula, std::string(what) + " is not integral");
  return x / 2;
}

void require_lemma_dimension(unsigned m) {
  if (m < 4 || m % 2 != 0) throw Error(Errc::OddDimension, "m must be even and at least 4");
}

std::uint64_t point_count(std::uint64_t q, unsigned dims, std::uint64_t bound) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < dims; ++i) {
    n *= q;
    if (n > bound) throw Error(Errc::SizeBoundExceeded, "enumeration exceeds bound " + std::to_string(bound));
  }
  return n;
}

void unrank(std::uint64_t r, std::uint32_t q, std::vector<Element>& y) {
  for (auto& c : y) {
    c = Element{static_cast<std::uint32_t>(r % q)};
    r /= q;
  }
}

void step(std::uint32_t q, std::vector<Element>& y) {
  for (auto& c : y) {
    if (++c.index < q) return;
    c.index = 0;
  }
}

/// Runs visit(y) for all y in F_q^dims, one accumulator per chunk; the
/// accumulators are returned in chunk order.
template <class Acc, class Visit>
std::vector<Acc> scan_points(const Field& f, unsigned dims, unsigned workers, std::uint64_t bound, Visit visit) {
  const std::uint64_t total = point_count(f.order(), dims, bound);
  if (workers == 0) workers = hardware_workers();
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total));
  const std::uint64_t size = (total + chunks - 1) / chunks;
  std::vector<Acc> acc(chunks);
  parallel_for(chunks, workers, [&](std::uint64_t cb, std::uint64_t ce) {
    std::vector<Element> y(dims);
    for (std::uint64_t c = cb; c < ce; ++c) {
      const std::uint64_t begin = std::min(total, c * size), end = std::min(total, begin + size);
      unrank(begin, f.order(), y);
      for (std::uint64_t r = begin; r < end; ++r) {
        visit(std::span<const Element>(y), acc[c]);
        step(f.order(), y);
      }
    }
  });
  return acc;
}

template <class Pred>
std::uint64_t count_points(const Field& f, unsigned dims, unsigned workers, std::uint64_t bound, Pred pred) {
  std::uint64_t total = 0;
  for (auto part : scan_points<std::uint64_t>(f, dims, workers, bound,
                                              [&](std::span<const Element> y, std::uint64_t& acc) {
                                                if (pred(y)) ++acc;
                                              }))
    total += part;
  return total;
}

struct Geometry {
  explicit Geometry(const Field& field)
      : f(field), eps(field.epsilon()), c(field.add(field.one(), field.square(field.epsilon()))) {}

  Element norm(std::span<const Element> y) const {
    Element s = f.zero();
    for (auto v : y) s = f.add(s, f.square(v));
    return s;
  }
  // Squared distance to P = (1, eps, 0, ..., 0).
  Element norm_to_p(std::span<const Element> y) const {
    Element s = f.add(f.square(f.sub(y[0], f.one())), f.square(f.sub(y[1], eps)));
    for (std::size_t i = 2; i < y.size(); ++i) s = f.add(s, f.square(y[i]));
    return s;
  }
  Element linear(std::span<const Element> y) const { return f.add(y[0], f.mul(eps, y[1])); }
  // Residual of the class equation for a nonzero square g.
  bool in_gamma_class(std::span<const Element> y, Element g, Element n) const {
    const Element shift = f.mul(f.half(), f.sub(c, g));
    return f.square(f.sub(linear(y), shift)) == f.mul(g, n);
  }

  const Field& f;
  Element eps;
  Element c;
};

void require_nonzero_square(const Field& f, Element g) {
  if (f.chi(g) != 1) throw Error(Errc::NotASquare, "gamma^2 must be a nonzero square");
}

constexpr unsigned mod4(std::uint64_t x) { return static_cast<unsigned>(x % 4); }

}  // namespace

CountPair make_count_pair(std::string name, std::int64_t formula, std::int64_t oracle) {
  return CountPair{std::move(name), formula, oracle, formula == oracle};
}

std::string_view branch_name(GammaBranch b) noexcept { return b == GammaBranch::Minus ? "minus" : "plus"; }

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

std::int64_t gamma_class_formula(std::uint64_t q_in, unsigned m, GammaBranch branch) {
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  return ipow(q, h - 1) * (ipow(q, h) + (branch == GammaBranch::Minus ? -1 : 1));
}

namespace {

struct BranchRow {
  unsigned m_mod4;
  unsigned q_mod4;
  int chi_shift;
  GammaBranch branch;
};

// Calibrated against the oracle; see calibrate_gamma_branches and its test.
constexpr std::array<BranchRow, 8> kGammaBranches{{
    {0, 1, +1, GammaBranch::Minus},
    {0, 1, -1, GammaBranch::Plus},
    {0, 3, +1, GammaBranch::Minus},
    {0, 3, -1, GammaBranch::Plus},
    {2, 1, +1, GammaBranch::Minus},
    {2, 1, -1, GammaBranch::Plus},
    {2, 3, +1, GammaBranch::Plus},
    {2, 3, -1, GammaBranch::Minus},
}};

}  // namespace

GammaBranch frozen_gamma_branch(unsigned m, std::uint64_t q, int chi_shift) {
  for (const auto& row : kGammaBranches)
    if (row.m_mod4 == m % 4 && row.q_mod4 == mod4(q) && row.chi_shift == chi_shift) return row.branch;
  throw Error(Errc::InvalidArgument, "no branch row for the given case");
}

std::int64_t bracket_zero_formula(std::uint64_t q_in, unsigned m) {
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  const std::int64_t tail = mod4(q_in) == 1 ? 2 : 0;
  return halve(ipow(q, h - 1) * (ipow(q, h) + ipow(q, h - 1) + tail), "[0]");
}

std::int64_t sigma_zero_formula(std::uint64_t q_in, unsigned m) {
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  const std::int64_t sign = (m % 4 == 2 && mod4(q_in) == 3) ? -1 : 1;
  return ipow(q, h - 1) * (ipow(q, h - 1) + sign);
}

std::int64_t sum_brackets_formula(std::uint64_t q_in, unsigned m) {
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  if (mod4(q_in) == 1) return halve(ipow(q, m - 1) * (q - 1), "sum of classes");
  const std::int64_t tail = m % 4 == 0 ? 2 : -2;
  return halve(ipow(q, h - 1) * (ipow(q, h + 1) - ipow(q, h) + tail), "sum of classes");
}

std::int64_t solvable_gamma_formula(std::uint64_t q_in, int chi_s) {
  const auto q = static_cast<std::int64_t>(q_in);
  if (mod4(q_in) == 1) return (q - 1) / 4;
  return chi_s == 1 ? (q - 3) / 4 : (q + 1) / 4;
}

std::int64_t special_r_formula(std::uint64_t q_in, unsigned m) {
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  const std::int64_t sign = (m % 4 == 2 && mod4(q_in) == 3) ? -1 : 1;
  return halve((q - 1) * ipow(q, h - 1) * (ipow(q, h - 1) + sign), "r");
}

std::int64_t special_ell_formula(std::uint64_t q, unsigned m) { return special_r_formula(q, m); }

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

std::uint64_t mu_direct(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  const Geometry geo(f);
  return count_points(f, m, workers, bound, [&](std::span<const Element> y) {
    return f.chi(geo.norm(y)) >= 0 && f.chi(geo.norm_to_p(y)) >= 0;
  });
}

CountPair bracket_zero(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  const Geometry geo(f);
  const Element c = geo.c, eps = geo.eps;
  const Element constant = f.mul(f.square(f.half()), f.square(c));
  const Element linear = f.neg(f.mul(eps, c));
  // y = (y_2, ..., y_m)
  const auto oracle = count_points(f, m - 1, workers, bound, [&](std::span<const Element> y) {
    Element v = f.add(f.mul(c, f.square(y[0])), f.add(f.mul(linear, y[0]), constant));
    for (std::size_t i = 1; i < y.size(); ++i) v = f.add(v, f.square(y[i]));
    return f.chi(v) >= 0;
  });
  return make_count_pair("bracket0", bracket_zero_formula(f.order(), m), static_cast<std::int64_t>(oracle));
}

CountPair sigma_zero(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  const Geometry geo(f);
  const auto oracle = count_points(f, m, workers, bound, [&](std::span<const Element> y) {
    return geo.norm(y).index == 0 && geo.norm_to_p(y).index == 0;
  });
  return make_count_pair("sigma0", sigma_zero_formula(f.order(), m), static_cast<std::int64_t>(oracle));
}

BracketGamma bracket_gamma(const Field& f, unsigned m, Element gamma_sq, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  require_nonzero_square(f, gamma_sq);
  const Geometry geo(f);
  BracketGamma out;
  out.gamma_sq = gamma_sq;
  out.chi_shift = f.chi(f.sub(gamma_sq, geo.c));
  out.branch = frozen_gamma_branch(m, f.order(), out.chi_shift);
  const auto oracle = count_points(f, m, workers, bound, [&](std::span<const Element> y) {
    return geo.in_gamma_class(y, gamma_sq, geo.norm(y));
  });
  out.count = make_count_pair("bracket[" + std::to_string(gamma_sq.index) + "]",
                              gamma_class_formula(f.order(), m, out.branch), static_cast<std::int64_t>(oracle));
  return out;
}

SolvableGamma solvable_gamma_count(const Field& f, Element s) {
  if (s.index == 0) throw Error(Errc::ZeroS, "s must be nonzero");
  const Element c = f.add(f.one(), f.square(f.epsilon()));
  std::set<std::uint32_t> values;
  for (std::uint32_t g = 1; g < f.order(); ++g) {
    const Element gsq = f.square(Element{g});
    for (std::uint32_t t = 0; t < f.order(); ++t)
      if (f.sub(gsq, f.mul(s, f.square(Element{t}))) == c) values.insert(gsq.index);
  }
  return {s, make_count_pair("R[" + std::to_string(s.index) + "]", solvable_gamma_formula(f.order(), f.chi(s)),
                             static_cast<std::int64_t>(values.size()))};
}

SumBrackets sum_brackets(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  SumBrackets out;
  std::int64_t oracle = 0;
  for (const Element g : f.squares()) {
    out.classes.push_back(bracket_gamma(f, m, g, workers, bound));
    oracle += out.classes.back().count.oracle;
    (out.classes.back().chi_shift == 1 ? out.square_shifts : out.nonsquare_shifts) += 1;
  }
  const std::uint64_t q = f.order();
  out.count = make_count_pair("sum_brackets", sum_brackets_formula(q, m), oracle);
  const std::int64_t with_square = solvable_gamma_formula(q, 1);
  const std::int64_t with_nonsquare = solvable_gamma_formula(q, -1);
  out.split = with_square * gamma_class_formula(q, m, frozen_gamma_branch(m, q, 1)) +
              with_nonsquare * gamma_class_formula(q, m, frozen_gamma_branch(m, q, -1));
  out.split_match = out.split == out.count.formula && out.split == out.count.oracle &&
                    with_square == out.square_shifts && with_nonsquare == out.nonsquare_shifts;
  return out;
}

MultiplicityAudit multiplicity_audit(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  const Geometry geo(f);
  const Element half_c = f.mul(f.half(), geo.c);
  const auto& squares = f.squares();

  auto parts = scan_points<MultiplicityAudit>(f, m, workers, bound, [&](std::span<const Element> y,
                                                                        MultiplicityAudit& acc) {
    const Element n = geo.norm(y);
    const Element d = geo.norm_to_p(y);
    const bool solution = f.chi(n) >= 0 && f.chi(d) >= 0;

    unsigned size = 0;
    Element only{0};
    if (solution && geo.linear(y) == half_c) {
      ++size;
      only = f.zero();
    }
    for (const Element g : squares) {
      if (geo.in_gamma_class(y, g, n)) {
        ++size;
        only = g;
      }
    }
    if (!solution) {
      // A class equation forces both norms to be squares.
      if (size != 0) acc.characterization_agrees = false;
      return;
    }
    acc.histogram[size] += 1;
    acc.total_multiplicity += size;
    if (size == 0 || size > 2) acc.support_ok = false;
    const bool single = size == 1;
    if (single != (n.index == 0 || d.index == 0)) acc.characterization_agrees = false;
    if (!single) return;
    ++acc.singles;
    if (only.index == 0)
      ++acc.doubly_special;
    else if (n.index == 0)
      ++acc.special_r;
    else if (only == n)
      ++acc.special_ell;
    else
      acc.characterization_agrees = false;
  });

  MultiplicityAudit out;
  for (const auto& p : parts) {
    for (const auto& [size, count] : p.histogram) out.histogram[size] += count;
    out.total_multiplicity += p.total_multiplicity;
    out.singles += p.singles;
    out.special_r += p.special_r;
    out.special_ell += p.special_ell;
    out.doubly_special += p.doubly_special;
    out.characterization_agrees = out.characterization_agrees && p.characterization_agrees;
    out.support_ok = out.support_ok && p.support_ok;
  }
  return out;
}

std::map<unsigned, std::uint64_t> multiplicity_histogram(const Field& f, unsigned m, unsigned workers,
                                                         std::uint64_t bound) {
  return multiplicity_audit(f, m, workers, bound).histogram;
}

CountPair special_r(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  const auto audit = multiplicity_audit(f, m, workers, bound);
  return make_count_pair("r", special_r_formula(f.order(), m), static_cast<std::int64_t>(audit.special_r));
}

CountPair special_ell(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  const auto audit = multiplicity_audit(f, m, workers, bound);
  return make_count_pair("ell", special_ell_formula(f.order(), m), static_cast<std::int64_t>(audit.special_ell));
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

bool LemmaReport::all_match() const {
  bool ok = bracket0.match && sigma0.match && brackets.count.match && brackets.split_match &&
            solvable_square.count.match && solvable_nonsquare.count.match && r.match && ell.match;
  for (const auto& b : brackets.classes) ok = ok && b.count.match;
  ok = ok && audit.support_ok && audit.characterization_agrees;
  ok = ok && static_cast<std::int64_t>(audit.total_multiplicity) == bracket0.oracle + brackets.count.oracle;
  ok = ok && static_cast<std::int64_t>(audit.total_multiplicity + audit.singles) == 2 * mu_direct;
  ok = ok && mu_assembled == mu_direct && mu_assembled_oracle == mu_direct && mu_formula == mu_direct;
  ok = ok && mu_common_neighbors + boundary == mu_direct;
  return ok;
}

LemmaReport assemble_mu(const Field& f, unsigned m, unsigned workers, std::uint64_t bound) {
  require_lemma_dimension(m);
  LemmaReport rep;
  rep.q = f.order();
  rep.m = m;
  rep.epsilon = f.epsilon();
  rep.bracket0 = bracket_zero(f, m, workers, bound);
  rep.sigma0 = sigma_zero(f, m, workers, bound);
  rep.brackets = sum_brackets(f, m, workers, bound);
  rep.solvable_square = solvable_gamma_count(f, f.one());
  rep.solvable_nonsquare = solvable_gamma_count(f, f.nonsquares().front());
  rep.audit = multiplicity_audit(f, m, workers, bound);
  rep.r = make_count_pair("r", special_r_formula(rep.q, m), static_cast<std::int64_t>(rep.audit.special_r));
  rep.ell = make_count_pair("ell", special_ell_formula(rep.q, m), static_cast<std::int64_t>(rep.audit.special_ell));
  rep.mu_direct = static_cast<std::int64_t>(mu_direct(f, m, workers, bound));
  rep.mu_formula = params::transcribed_params(rep.q, m).mu;

  const std::int64_t formula_sum =
      rep.bracket0.formula + rep.brackets.count.formula + rep.r.formula + rep.ell.formula + rep.sigma0.formula;
  const std::int64_t oracle_sum =
      rep.bracket0.oracle + rep.brackets.count.oracle + rep.r.oracle + rep.ell.oracle + rep.sigma0.oracle;
  if (formula_sum % 2 != 0 || oracle_sum % 2 != 0)
    throw Error(Errc::OddAssembly, "bracketed sum for mu is odd");
  rep.mu_assembled = formula_sum / 2;
  rep.mu_assembled_oracle = oracle_sum / 2;

  // Reconcile with the graph: common_neighbors excludes y in {O, P}.
  const auto g = graph::IntegralGraph::build(f, m, bound);
  std::vector<Element> p(m, f.zero());
  p[0] = f.one();
  p[1] = f.epsilon();
  rep.mu_common_neighbors = static_cast<std::int64_t>(g.common_neighbors(g.rank(p)));
  const Geometry geo(f);
  const std::vector<Element> origin(m, f.zero());
  for (const auto* y : std::array<const std::vector<Element>*, 2>{&origin, &p})
    if (f.chi(geo.norm(*y)) >= 0 && f.chi(geo.norm_to_p(*y)) >= 0) ++rep.boundary;
  return rep;
}

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

std::vector<CalibrationEntry> calibrate_gamma_branches(std::uint64_t bound) {
  std::vector<CalibrationEntry> out;
  for (unsigned m_mod4 : {0u, 2u}) {
    for (unsigned q_mod4 : {1u, 3u}) {
      for (int chi : {+1, -1}) {
        CalibrationEntry entry;
        entry.m_mod4 = m_mod4;
        entry.q_mod4 = q_mod4;
        entry.chi_shift = chi;
        const unsigned m = m_mod4 == 0 ? 4 : 6;
        for (std::uint64_t q = 3; !entry.resolved; q += 2) {
          if (q % 4 != q_mod4 || !gf::prime_power(q)) continue;
          std::uint64_t v = 1;
          for (unsigned i = 0; i < m; ++i) v *= q;
          if (v > bound) break;
          const Field f = Field::of_order(q);
          const Element c = f.add(f.one(), f.square(f.epsilon()));
          for (const Element g : f.squares()) {
            if (f.chi(f.sub(g, c)) != chi) continue;
            const Geometry geo(f);
            const auto oracle = static_cast<std::int64_t>(count_points(
                f, m, 0, bound,
                [&](std::span<const Element> y) { return geo.in_gamma_class(y, g, geo.norm(y)); }));
            entry.q = q;
            entry.m = m;
            entry.gamma_sq = g;
            entry.oracle = oracle;
            if (oracle == gamma_class_formula(q, m, GammaBranch::Minus)) {
              entry.branch = GammaBranch::Minus;
              entry.resolved = true;
            } else if (oracle == gamma_class_formula(q, m, GammaBranch::Plus)) {
              entry.branch = GammaBranch::Plus;
              entry.resolved = true;
            }
            break;
          }
          if (entry.q != 0) break;
        }
        out.push_back(entry);
      }
    }
  }
  return out;
}

}  // namespace isrg::lemmas
