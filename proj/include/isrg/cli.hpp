#pragma once

// Command-line front end. Every command writes one report in the selected
// format; JSON reports carry "schema": 1 and snake_case keys.
//
// Exit codes: 0 success, 1 certificate failure or count mismatch, 2 usage or
// resource error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isrg::cli {

enum class Command { Params, Build, Certify, Lemma, Sweep, Export };
enum class Format { Json, Csv, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultCensusBound = std::uint64_t{1} << 24;
inline constexpr const char* kWorkersEnv = "INTEGRAL_SRG_WORKERS";

struct RunConfig {
  Command command = Command::Certify;
  std::uint64_t q = 0;
  unsigned m = 0;
  std::vector<std::uint64_t> q_list;  // sweep only
  std::vector<unsigned> m_list;       // sweep only
  Format format = Format::Json;
  std::optional<std::string> output;  // stdout when empty
  unsigned workers = 1;
  std::uint64_t size_bound = kDefaultCensusBound;
  /// Lemma oracles enumerate up to this many points.
  std::uint64_t oracle_bound = std::uint64_t{1} << 20;
  std::uint64_t dense_bound = std::uint64_t{1} << 12;
  /// Report wall_ms as 0 so sweep output is reproducible.
  bool no_timing = false;
};

/// Sweep CSV columns, in order.
inline constexpr const char* kSweepColumns =
    "q,m,status,v,k,lambda,mu,is_srg,mu_agree,lemmas_match,audit_ok,wall_ms";

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (without the program name) and runs the command.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from INTEGRAL_SRG_WORKERS, or the hardware count.
unsigned default_workers();

}  // namespace isrg::cli
