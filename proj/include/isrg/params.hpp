#pragma once

// Closed-form (v, k, lambda, mu) for the integral-distance graph, the SRG
// feasibility conditions, and a three-way errata comparison.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isrg/graph.hpp"

namespace isrg::params {

enum class Source { Transcribed, Validated, Certified };

std::string_view source_name(Source s) noexcept;

struct SrgParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  Source source = Source::Transcribed;
};

/// The published parameter formulas, evaluated as printed. Requires q an
/// odd prime power, m even and at least 4.
/// Throws unless q is an odd prime power, m is even and at least 4, and
/// q^m <= 2^31.
void check_args(std::uint64_t q, unsigned m);

SrgParams transcribed_params(std::uint64_t q, unsigned m);

/// k from the isotropic + square-norm class sizes, mu as published, and
/// lambda forced by (v-k-1)mu = k(k-lambda-1).
SrgParams validated_params(std::uint64_t q, unsigned m);

SrgParams certified_params(const graph::SrgCertificate& cert);

/// +1 if (-1)^(m/2) is a square in F_q (the norm form is hyperbolic), else -1.
int norm_form_type(std::uint64_t q, unsigned m);

/// Conjectured closed form
///   lambda = q^(m-2)(q+1)^2/4 + (-1)^(m(q-1)/4) q^(m/2-1)(q-1)/2 - 2.
std::int64_t lambda_closed_form(std::uint64_t q, unsigned m);

struct Feasibility {
  bool identity_holds = false;   // (v-k-1)mu = k(k-lambda-1)
  bool nonnegative = false;
  bool lambda_bound = false;     // lambda <= k - 1
  bool mu_bound = false;         // mu <= k
  bool conference = false;       // discriminant not a perfect square
  std::optional<std::int64_t> r;  // restricted eigenvalues, when integral
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> f;  // multiplicity of r
  std::optional<std::int64_t> g;  // multiplicity of s
  bool multiplicities_integral = false;
  bool feasible = false;
};

Feasibility feasibility_check(const SrgParams& p);

enum class Verdict { Consistent, TranscriptionSuspect };

std::string_view verdict_name(Verdict v) noexcept;

struct ErrataEntry {
  std::string quantity;
  std::int64_t transcribed = 0;
  std::int64_t validated = 0;
  std::int64_t oracle = 0;
  Verdict verdict = Verdict::Consistent;
};

/// One entry each for v, k, lambda, mu; the certificate is the oracle.
std::vector<ErrataEntry> errata_report(std::uint64_t q, unsigned m, const graph::SrgCertificate& cert);

}  // namespace isrg::params
