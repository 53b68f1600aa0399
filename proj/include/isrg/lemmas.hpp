#pragma once

// Counting mu through the decomposition of the common neighbours of
// O = 0 and P = (1, eps, 0, ..., 0).
//
// With N(y) = sum y_i^2, D(y) = N(y - P), L(y) = y_1 + eps*y_2 and
// c = 1 + eps^2, a point y is a common neighbour (allowing y in {O, P}) iff
// N(y) and D(y) are both squares or zero. Such a y lies in the class of a
// nonzero square g when
//
//     (L(y) - (c - g)/2)^2 - g*N(y) = 0,
//
// and in the class g = 0 when L(y) = c/2. Every solution lies in one or two
// classes; it lies in exactly one when N(y) = 0 or D(y) = 0. Hence
//
//     2*mu = [0] + sum_g [g] + r + ell + sigma0
//
// where r, ell and sigma0 count the single-class solutions with N = 0 and
// D a nonzero square, D = 0 and N a nonzero square, and N = D = 0.
//
// Every count below is produced twice: by a closed form and by exhaustive
// enumeration.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isrg/gf.hpp"

namespace isrg::lemmas {

using gf::Element;
using gf::Field;

inline constexpr std::uint64_t kDefaultOracleBound = std::uint64_t{1} << 20;

struct CountPair {
  std::string name;
  std::int64_t formula = 0;
  std::int64_t oracle = 0;
  bool match = false;
};

CountPair make_count_pair(std::string name, std::int64_t formula, std::int64_t oracle);

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Size of a nonzero-square class: q^(m/2-1) * (q^(m/2) - 1) for Minus,
/// q^(m/2-1) * (q^(m/2) + 1) for Plus.
enum class GammaBranch { Minus, Plus };

std::string_view branch_name(GammaBranch b) noexcept;

std::int64_t gamma_class_formula(std::uint64_t q, unsigned m, GammaBranch branch);

/// Frozen branch table keyed by (m mod 4, q mod 4, chi(g - c)).
GammaBranch frozen_gamma_branch(unsigned m, std::uint64_t q, int chi_shift);

std::int64_t bracket_zero_formula(std::uint64_t q, unsigned m);
std::int64_t sigma_zero_formula(std::uint64_t q, unsigned m);
std::int64_t sum_brackets_formula(std::uint64_t q, unsigned m);
/// Number of nonzero squares g with g - s*tau^2 = c solvable.
std::int64_t solvable_gamma_formula(std::uint64_t q, int chi_s);
std::int64_t special_r_formula(std::uint64_t q, unsigned m);
std::int64_t special_ell_formula(std::uint64_t q, unsigned m);

// ---------------------------------------------------------------------------
// Oracle-backed counts
// ---------------------------------------------------------------------------

/// #{y : N(y) and D(y) are squares or zero}.
std::uint64_t mu_direct(const Field& f, unsigned m, unsigned workers = 0,
                        std::uint64_t bound = kDefaultOracleBound);

/// [0]: tuples (y_2..y_m) with c*y2^2 - eps*c*y2 + c^2/4 + sum_{i>=3} y_i^2 a
/// square or zero.
CountPair bracket_zero(const Field& f, unsigned m, unsigned workers = 0,
                       std::uint64_t bound = kDefaultOracleBound);

/// #{y : N(y) = D(y) = 0}.
CountPair sigma_zero(const Field& f, unsigned m, unsigned workers = 0,
                     std::uint64_t bound = kDefaultOracleBound);

struct BracketGamma {
  Element gamma_sq;
  int chi_shift = 0;  // chi(g - c)
  GammaBranch branch = GammaBranch::Minus;
  CountPair count;
};

/// Class size [g] for a nonzero square g.
BracketGamma bracket_gamma(const Field& f, unsigned m, Element gamma_sq, unsigned workers = 0,
                           std::uint64_t bound = kDefaultOracleBound);

struct SolvableGamma {
  Element s;
  CountPair count;
};

SolvableGamma solvable_gamma_count(const Field& f, Element s);

struct SumBrackets {
  CountPair count;
  std::vector<BracketGamma> classes;
  /// Count of classes with chi(g - c) = +1 and -1.
  std::int64_t square_shifts = 0;
  std::int64_t nonsquare_shifts = 0;
  /// square_shifts * [g+] + nonsquare_shifts * [g-] using the closed forms.
  std::int64_t split = 0;
  bool split_match = false;
};

SumBrackets sum_brackets(const Field& f, unsigned m, unsigned workers = 0,
                         std::uint64_t bound = kDefaultOracleBound);

struct MultiplicityAudit {
  std::map<unsigned, std::uint64_t> histogram;  // |G(y)| -> count
  std::uint64_t total_multiplicity = 0;         // sum |G(y)|
  std::uint64_t singles = 0;                    // #{|G(y)| = 1}
  std::uint64_t special_r = 0;                  // single, N = 0, g != 0
  std::uint64_t special_ell = 0;                // single, g = N != 0
  std::uint64_t doubly_special = 0;             // single, g = 0
  /// |G(y)| = 1 exactly when N(y) = 0 or D(y) = 0.
  bool characterization_agrees = true;
  bool support_ok = true;  // histogram support within {1, 2}
};

/// Computes G(y), the set of classes in {0} and the nonzero squares that
/// contain y, for every solution y by testing each class directly.
MultiplicityAudit multiplicity_audit(const Field& f, unsigned m, unsigned workers = 0,
                                     std::uint64_t bound = kDefaultOracleBound);

std::map<unsigned, std::uint64_t> multiplicity_histogram(const Field& f, unsigned m, unsigned workers = 0,
                                                         std::uint64_t bound = kDefaultOracleBound);

CountPair special_r(const Field& f, unsigned m, unsigned workers = 0, std::uint64_t bound = kDefaultOracleBound);
CountPair special_ell(const Field& f, unsigned m, unsigned workers = 0,
                      std::uint64_t bound = kDefaultOracleBound);

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

struct LemmaReport {
  std::uint64_t q = 0;
  unsigned m = 0;
  Element epsilon;
  CountPair bracket0;
  CountPair sigma0;
  SumBrackets brackets;
  SolvableGamma solvable_square;     // s = 1
  SolvableGamma solvable_nonsquare;  // s = least nonsquare
  CountPair r;
  CountPair ell;
  MultiplicityAudit audit;
  std::int64_t mu_assembled = 0;         // from the closed forms
  std::int64_t mu_assembled_oracle = 0;  // from the oracle counts
  std::int64_t mu_direct = 0;
  std::int64_t mu_formula = 0;           // published mu
  std::int64_t mu_common_neighbors = 0;  // graph count for the pair (O, P)
  std::int64_t boundary = 0;             // #{y in {O, P} : both norms square or zero}

  /// Every CountPair matches and all mu routes agree.
  bool all_match() const;
};

/// Fills every count, then halves the bracketed sums. Throws OddAssembly if
/// either sum is odd.
LemmaReport assemble_mu(const Field& f, unsigned m, unsigned workers = 0,
                        std::uint64_t bound = kDefaultOracleBound);

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

struct CalibrationEntry {
  unsigned m_mod4 = 0;
  unsigned q_mod4 = 0;
  int chi_shift = 0;
  std::uint64_t q = 0;  // smallest admissible case exercising this row
  unsigned m = 0;
  Element gamma_sq;
  std::int64_t oracle = 0;
  bool resolved = false;
  GammaBranch branch = GammaBranch::Minus;
};

/// Re-derives every branch-table row from the oracle at the smallest
/// (q, m) with m >= 4 where that row occurs.
std::vector<CalibrationEntry> calibrate_gamma_branches(std::uint64_t bound = kDefaultOracleBound);

}  // namespace isrg::lemmas
