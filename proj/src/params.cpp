#include "isrg/params.hpp"

#include <cmath>
#include <string>

#include "isrg/gf.hpp"

namespace isrg::params {

namespace {

// Values stay below 2^62 as long as q^m <= 2^31.
constexpr std::int64_t kMaxOrder = std::int64_t{1} << 31;

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (den == 0 || num % den != 0)
    throw Error(Errc::NonIntegralFormula, std::string(what) + " is not integral");
  return num / den;
}


std::int64_t transcribed_mu(std::int64_t q, unsigned m) {
  const unsigned h = m / 2;
  const std::int64_t tail = q % 4 == 1 ? 2 : 2 * (h % 2 == 0 ? 1 : -1);
  return exact_div(ipow(q, h - 1) * (q + 1) * (ipow(q, h) + ipow(q, h - 1) + tail), 4, "mu");
}

}  // namespace

void check_args(std::uint64_t q, unsigned m) {
  if (q % 2 == 0) throw Error(Errc::EvenCharacteristic, "q must be odd");
  if (!gf::prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (m < 4 || m % 2 != 0) throw Error(Errc::OddDimension, "m must be even and at least 4");
  std::uint64_t v = 1;
  for (unsigned i = 0; i < m; ++i) {
    v *= q;
    if (v > static_cast<std::uint64_t>(kMaxOrder))
      throw Error(Errc::SizeBoundExceeded, "q^m too large for closed-form evaluation");
  }
}

std::string_view source_name(Source s) noexcept {
  switch (s) {
    case Source::Transcribed: return "transcribed";
    case Source::Validated: return "validated";
    case Source::Certified: return "certified";
  }
  return "unknown";
}

std::string_view verdict_name(Verdict v) noexcept {
  return v == Verdict::Consistent ? "Consistent" : "TranscriptionSuspect";
}

int norm_form_type(std::uint64_t q, unsigned m) {
  // -1 is a square in F_q iff q = 1 (mod 4).
  return ((m / 2) % 2 == 0 || q % 4 == 1) ? 1 : -1;
}

SrgParams transcribed_params(std::uint64_t q_in, unsigned m) {
  check_args(q_in, m);
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  SrgParams p;
  p.source = Source::Transcribed;
  p.v = ipow(q, m);
  if (q % 4 == 1)
    p.k = exact_div(ipow(q, m) + ipow(q, m - 1) + ipow(q, h) + ipow(q, h - 1), 2, "k") - 1;
  else
    p.k = exact_div(ipow(q, m) + ipow(q, m - 1) + ipow(-q, h) + ipow(-q, h - 1), 2, "k") - 1;
  const std::int64_t sign = ((m * (q - 1) / 4) % 2 == 0) ? 1 : -1;
  p.lambda = exact_div(ipow(q, m - 2) * (q + 1) * (q + 1), 4, "lambda") + 2 * sign * ipow(q, h - 1) * (q - 1) - 2;
  p.mu = transcribed_mu(q, m);
  return p;
}

SrgParams validated_params(std::uint64_t q_in, unsigned m) {
  check_args(q_in, m);
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  const std::int64_t eta = norm_form_type(q_in, m);
  SrgParams p;
  p.source = Source::Validated;
  p.v = ipow(q, m);
  p.k = exact_div(ipow(q, m) + ipow(q, m - 1) + eta * ipow(q, h) - eta * ipow(q, h - 1), 2, "k") - 1;
  p.mu = transcribed_mu(q, m);
  const std::int64_t num = (p.v - p.k - 1) * p.mu;
  if (p.k == 0 || num % p.k != 0)
    throw Error(Errc::NonIntegralLambda, "(v-k-1)mu is not divisible by k");
  p.lambda = p.k - 1 - num / p.k;
  return p;
}

SrgParams certified_params(const graph::SrgCertificate& cert) {
  return {static_cast<std::int64_t>(cert.v), static_cast<std::int64_t>(cert.k),
          static_cast<std::int64_t>(cert.lambda), static_cast<std::int64_t>(cert.mu), Source::Certified};
}

std::int64_t lambda_closed_form(std::uint64_t q_in, unsigned m) {
  check_args(q_in, m);
  const auto q = static_cast<std::int64_t>(q_in);
  const unsigned h = m / 2;
  const std::int64_t sign = ((m * (q - 1) / 4) % 2 == 0) ? 1 : -1;
  return exact_div(ipow(q, m - 2) * (q + 1) * (q + 1), 4, "lambda") +
         sign * exact_div(ipow(q, h - 1) * (q - 1), 2, "lambda") - 2;
}

Feasibility feasibility_check(const SrgParams& p) {
  __extension__ typedef __int128 wide;
  Feasibility out;
  const wide v = p.v, k = p.k, lambda = p.lambda, mu = p.mu;
  out.identity_holds = (v - k - 1) * mu == k * (k - lambda - 1);
  out.nonnegative = p.v >= 0 && p.k >= 0 && p.lambda >= 0 && p.mu >= 0;
  out.lambda_bound = lambda <= k - 1;
  out.mu_bound = mu <= k;

  const wide diff = lambda - mu;
  const wide disc = diff * diff + 4 * (k - mu);
  if (disc >= 0) {
    auto root = static_cast<wide>(std::sqrt(static_cast<long double>(disc)));
    while (root * root > disc) --root;
    while ((root + 1) * (root + 1) <= disc) ++root;
    if (root * root == disc) {
      // root has the parity of lambda - mu, so both eigenvalues are integers.
      const wide r = (diff + root) / 2, s = (diff - root) / 2;
      out.r = static_cast<std::int64_t>(r);
      out.s = static_cast<std::int64_t>(s);
      if (r != s) {
        const wide num = -k - (v - 1) * s;
        if (num % (r - s) == 0) {
          const wide f = num / (r - s);
          const wide g = v - 1 - f;
          out.f = static_cast<std::int64_t>(f);
          out.g = static_cast<std::int64_t>(g);
          out.multiplicities_integral = f >= 0 && g >= 0;
        }
      }
    } else {
      out.conference = true;
      if (2 * k + (v - 1) * diff == 0 && (v - 1) % 2 == 0) {
        out.f = out.g = static_cast<std::int64_t>((v - 1) / 2);
        out.multiplicities_integral = true;
      }
    }
  }
  out.feasible = out.identity_holds && out.nonnegative && out.lambda_bound && out.mu_bound &&
                 out.multiplicities_integral;
  return out;
}

std::vector<ErrataEntry> errata_report(std::uint64_t q, unsigned m, const graph::SrgCertificate& cert) {
  const SrgParams t = transcribed_params(q, m);
  const SrgParams v = validated_params(q, m);
  const SrgParams c = certified_params(cert);
  auto entry = [](std::string name, std::int64_t a, std::int64_t b, std::int64_t o) {
    return ErrataEntry{std::move(name), a, b, o,
                       (a == b && b == o) ? Verdict::Consistent : Verdict::TranscriptionSuspect};
  };
  return {entry("v", t.v, v.v, c.v), entry("k", t.k, v.k, c.k), entry("lambda", t.lambda, v.lambda, c.lambda),
          entry("mu", t.mu, v.mu, c.mu)};
}

}  // namespace isrg::params
