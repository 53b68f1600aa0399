#include "isrg/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "isrg/error.hpp"
#include "isrg/gf.hpp"
#include "isrg/graph.hpp"
#include "isrg/graph6.hpp"
#include "isrg/lemmas.hpp"
#include "isrg/named_forms.hpp"
#include "isrg/parallel.hpp"
#include "isrg/params.hpp"

namespace isrg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;

struct Outcome {
  json report;
  bool ok = true;
};

std::uint64_t order_of(std::uint64_t q, unsigned m) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (v > (std::uint64_t{1} << 40)) return v;
    v *= q;
  }
  return v;
}

gf::Field field_for(std::uint64_t q) { return gf::Field::of_order(q); }

void require_even_m(unsigned m, unsigned least) {
  if (m < least || m % 2 != 0)
    throw Error(Errc::OddDimension, "m must be even and at least " + std::to_string(least));
}

void require_within(std::uint64_t q, unsigned m, std::uint64_t bound) {
  if (order_of(q, m) > bound)
    throw Error(Errc::SizeBoundExceeded, "q^m exceeds size bound " + std::to_string(bound));
}

json pair_json(const lemmas::CountPair& p) {
  return json{{"formula", p.formula}, {"oracle", p.oracle}, {"match", p.match}};
}

json params_json(const params::SrgParams& p) {
  return json{{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}};
}

json header(std::string_view command, std::uint64_t q, unsigned m) {
  return json{{"schema", kSchema}, {"command", command}, {"q", q}, {"m", m}};
}

std::string_view witness_name(graph::WitnessKind k) {
  switch (k) {
    case graph::WitnessKind::IsotropicClassNotConstant: return "isotropic_class_not_constant";
    case graph::WitnessKind::SquareClassNotConstant: return "square_class_not_constant";
    case graph::WitnessKind::NonsquareClassNotConstant: return "nonsquare_class_not_constant";
    case graph::WitnessKind::IsotropicDiffersFromSquare: return "isotropic_differs_from_square";
    case graph::WitnessKind::IdentityFails: return "identity_fails";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

Outcome cmd_params(const RunConfig& c) {
  params::check_args(c.q, c.m);
  const auto t = params::transcribed_params(c.q, c.m);
  const auto v = params::validated_params(c.q, c.m);
  const auto feas = params::feasibility_check(v);
  Outcome o{header("params", c.q, c.m)};
  o.report["eta"] = params::norm_form_type(c.q, c.m);
  o.report["transcribed"] = params_json(t);
  o.report["validated"] = params_json(v);
  o.report["lambda_closed_form"] = params::lambda_closed_form(c.q, c.m);
  json f{{"identity_holds", feas.identity_holds},
         {"nonnegative", feas.nonnegative},
         {"lambda_bound", feas.lambda_bound},
         {"mu_bound", feas.mu_bound},
         {"conference", feas.conference}};
  f["r"] = feas.r ? json(*feas.r) : json(nullptr);
  f["s"] = feas.s ? json(*feas.s) : json(nullptr);
  f["f"] = feas.f ? json(*feas.f) : json(nullptr);
  f["g"] = feas.g ? json(*feas.g) : json(nullptr);
  f["multiplicities_integral"] = feas.multiplicities_integral;
  f["feasible"] = feas.feasible;
  o.report["feasibility"] = f;
  o.ok = t.mu == v.mu && feas.feasible;
  return o;
}

Outcome cmd_build(const RunConfig& c) {
  require_even_m(c.m, 2);
  const auto f = field_for(c.q);
  const auto g = graph::IntegralGraph::build(f, c.m, c.size_bound);
  const auto census = graph::distance_census(g);
  Outcome o{header("build", c.q, c.m)};
  o.report["v"] = g.order();
  o.report["k"] = census.k();
  o.report["epsilon"] = f.epsilon().index;
  o.report["census"] = json{{"isotropic", census.n0}, {"square", census.nplus}, {"nonsquare", census.nminus}};
  return o;
}

json certificate_json(const graph::SrgCertificate& cert) {
  json j{{"is_srg", cert.is_srg}, {"informational_only", cert.informational_only},
         {"v", cert.v},           {"k", cert.k},
         {"lambda", cert.lambda}, {"mu", cert.mu}};
  j["sigma"] = cert.sigma ? json(*cert.sigma) : json(nullptr);
  j["census"] =
      json{{"isotropic", cert.census.n0}, {"square", cert.census.nplus}, {"nonsquare", cert.census.nminus}};
  if (cert.witness)
    j["witness"] = json{{"kind", witness_name(cert.witness->kind)},
                        {"difference", cert.witness->difference},
                        {"observed", cert.witness->observed},
                        {"expected", cert.witness->expected}};
  else
    j["witness"] = nullptr;
  return j;
}

Outcome cmd_certify(const RunConfig& c) {
  require_even_m(c.m, 2);
  const auto f = field_for(c.q);
  const auto g = graph::IntegralGraph::build(f, c.m, c.size_bound);
  const auto cert = graph::certify_srg(g, c.workers);
  Outcome o{header("certify", c.q, c.m)};
  o.report.update(certificate_json(cert));
  o.ok = cert.is_srg;

  if (g.order() <= c.dense_bound) {
    const auto mat = graph::matrix_identity_check(g, c.workers, c.dense_bound);
    o.report["matrix_identity"] = json{{"checked", true}, {"holds", mat.holds}};
    o.ok = o.ok && mat.holds;
  } else {
    o.report["matrix_identity"] = json{{"checked", false}, {"holds", nullptr}};
  }

  if (c.m >= 4) {
    json errata = json::array();
    for (const auto& e : params::errata_report(c.q, c.m, cert)) {
      errata.push_back(json{{"quantity", e.quantity},
                            {"transcribed", e.transcribed},
                            {"validated", e.validated},
                            {"oracle", e.oracle},
                            {"verdict", params::verdict_name(e.verdict)}});
      if (e.quantity == "mu" && e.verdict != params::Verdict::Consistent) o.ok = false;
    }
    o.report["errata"] = errata;
  } else {
    o.report["errata"] = json::array();
  }
  return o;
}

json quadrics_json(const gf::Field& f, unsigned m, std::uint64_t bound, bool& ok) {
  json arr = json::array();
  for (const auto& nf : quadrics::named_forms(f, m)) {
    const auto census = quadrics::count_projective_points(nf.form, bound);
    json j{{"label", nf.label}};
    j["gamma_sq"] = nf.gamma_sq ? json(nf.gamma_sq->index) : json(nullptr);
    j["kind"] = quadrics::kind_name(census.cls.kind);
    j["r"] = census.cls.r;
    j["theoretical"] = census.theoretical ? json(*census.theoretical) : json(nullptr);
    j["exhaustive"] = census.exhaustive;
    j["match"] = census.match;
    ok = ok && census.match;
    arr.push_back(j);
  }
  return arr;
}

Outcome cmd_lemma(const RunConfig& c) {
  params::check_args(c.q, c.m);
  require_within(c.q, c.m, c.oracle_bound);
  const auto f = field_for(c.q);
  const auto rep = lemmas::assemble_mu(f, c.m, c.workers, c.oracle_bound);
  Outcome o{header("lemma", c.q, c.m)};
  auto& j = o.report;
  j["epsilon"] = rep.epsilon.index;
  j["bracket0"] = pair_json(rep.bracket0);
  j["sigma0"] = pair_json(rep.sigma0);
  json sum = pair_json(rep.brackets.count);
  sum["square_shifts"] = rep.brackets.square_shifts;
  sum["nonsquare_shifts"] = rep.brackets.nonsquare_shifts;
  sum["split"] = rep.brackets.split;
  sum["split_match"] = rep.brackets.split_match;
  j["sum"] = sum;
  json classes = json::array();
  for (const auto& b : rep.brackets.classes) {
    json cj{{"gamma_sq", b.gamma_sq.index}, {"chi_shift", b.chi_shift}, {"branch", lemmas::branch_name(b.branch)}};
    cj.update(pair_json(b.count));
    classes.push_back(cj);
  }
  j["classes"] = classes;
  j["solvable"] = json{{"square", pair_json(rep.solvable_square.count)},
                       {"nonsquare", pair_json(rep.solvable_nonsquare.count)}};
  j["r"] = pair_json(rep.r);
  j["ell"] = pair_json(rep.ell);
  json hist = json::object();
  for (const auto& [size, count] : rep.audit.histogram) hist[std::to_string(size)] = count;
  j["audit"] = json{{"histogram", hist},
                    {"total_multiplicity", rep.audit.total_multiplicity},
                    {"singles", rep.audit.singles},
                    {"doubly_special", rep.audit.doubly_special},
                    {"characterization_agrees", rep.audit.characterization_agrees},
                    {"support_ok", rep.audit.support_ok}};
  j["mu"] = json{{"formula", rep.mu_formula},
                 {"assembled", rep.mu_assembled},
                 {"assembled_oracle", rep.mu_assembled_oracle},
                 {"direct", rep.mu_direct},
                 {"common_neighbors", rep.mu_common_neighbors},
                 {"boundary", rep.boundary}};
  bool quadrics_ok = true;
  j["quadrics"] = quadrics_json(f, c.m, c.oracle_bound, quadrics_ok);
  o.ok = rep.all_match() && quadrics_ok;
  j["all_match"] = o.ok;
  return o;
}

Outcome cmd_export(const RunConfig& c, std::ostream& out) {
  require_even_m(c.m, 2);
  require_within(c.q, c.m, graph::kGraph6LongLimit);
  const auto f = field_for(c.q);
  const auto g = graph::IntegralGraph::build(f, c.m, c.size_bound);
  graph::export_graph6(g, out);
  return Outcome{json(nullptr)};
}

struct SweepRow {
  std::uint64_t q = 0;
  unsigned m = 0;
  std::string status = "OK";
  json v, k, lambda, mu, is_srg, mu_agree, lemmas_match, audit_ok;
  std::int64_t wall_ms = 0;
  bool ok = true;
};

SweepRow sweep_cell(const RunConfig& c, std::uint64_t q, unsigned m) {
  SweepRow row;
  row.q = q;
  row.m = m;
  const auto start = std::chrono::steady_clock::now();
  try {
    params::check_args(q, m);
    if (order_of(q, m) > c.size_bound) {
      row.status = "SKIPPED(SizeBound)";
      return row;
    }
    const auto f = field_for(q);
    const auto g = graph::IntegralGraph::build(f, m, c.size_bound);
    const auto cert = graph::certify_srg(g, c.workers);
    row.v = cert.v;
    row.k = cert.k;
    row.lambda = cert.lambda;
    row.mu = cert.mu;
    row.is_srg = cert.is_srg;
    bool agree = params::transcribed_params(q, m).mu == static_cast<std::int64_t>(cert.mu);
    row.ok = cert.is_srg;
    if (order_of(q, m) <= c.oracle_bound) {
      const auto rep = lemmas::assemble_mu(f, m, c.workers, c.oracle_bound);
      agree = agree && rep.mu_direct == static_cast<std::int64_t>(cert.mu) &&
              rep.mu_assembled == rep.mu_direct;
      row.lemmas_match = rep.all_match();
      row.audit_ok = rep.audit.support_ok && rep.audit.characterization_agrees;
      row.ok = row.ok && rep.all_match();
    }
    row.mu_agree = agree;
    row.ok = row.ok && agree;
    if (!row.ok) row.status = "MISMATCH";
  } catch (const Error& e) {
    row.ok = e.code() == Errc::SizeBoundExceeded;
    row.status = row.ok ? "SKIPPED(SizeBound)" : "ERROR(" + std::string(errc_name(e.code())) + ")";
  }
  if (!c.no_timing)
    row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                      .count();
  return row;
}

json row_json(const SweepRow& r) {
  return json{{"q", r.q},
              {"m", r.m},
              {"status", r.status},
              {"v", r.v},
              {"k", r.k},
              {"lambda", r.lambda},
              {"mu", r.mu},
              {"is_srg", r.is_srg},
              {"mu_agree", r.mu_agree},
              {"lemmas_match", r.lemmas_match},
              {"audit_ok", r.audit_ok},
              {"wall_ms", r.wall_ms}};
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) flatten(value, prefix + "." + std::to_string(i++), out);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

void write_report(const json& report, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << report.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  if (format == Format::Csv) out << "key,value\n";
  for (const auto& [key, value] : rows) out << key << (format == Format::Csv ? "," : " = ") << value << '\n';
}

void write_sweep(const RunConfig& c, const std::vector<SweepRow>& rows, std::ostream& out) {
  if (c.format == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    json report{{"schema", kSchema}, {"command", "sweep"}, {"columns", kSweepColumns}, {"rows", arr}};
    out << report.dump(2) << '\n';
    return;
  }
  const char* sep = c.format == Format::Csv ? "," : "\t";
  std::string head = kSweepColumns;
  if (c.format == Format::Text)
    for (auto& ch : head)
      if (ch == ',') ch = '\t';
  out << head << '\n';
  for (const auto& r : rows) {
    bool first = true;
    const json cells = row_json(r);
    for (const auto& [key, value] : cells.items()) {
      out << (first ? "" : sep) << scalar_text(value);
      first = false;
    }
    out << '\n';
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::OddAssembly:
    case Errc::NonIntegralLambda:
    case Errc::NonIntegralFormula: return kExitMismatch;
    default: return kExitUsage;
  }
}

int run_to(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::Sweep: {
      std::vector<SweepRow> rows;
      bool ok = true;
      for (auto q : c.q_list)
        for (auto m : c.m_list) {
          rows.push_back(sweep_cell(c, q, m));
          ok = ok && rows.back().ok;
        }
      write_sweep(c, rows, out);
      return ok ? kExitOk : kExitMismatch;
    }
    case Command::Export: cmd_export(c, out); return kExitOk;
    default: break;
  }
  Outcome o;
  switch (c.command) {
    case Command::Params: o = cmd_params(c); break;
    case Command::Build: o = cmd_build(c); break;
    case Command::Certify: o = cmd_certify(c); break;
    case Command::Lemma: o = cmd_lemma(c); break;
    default: break;
  }
  write_report(o.report, c.format, out);
  return o.ok ? kExitOk : kExitMismatch;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 1024) return static_cast<unsigned>(n);
  }
  return hardware_workers();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.workers == 0) throw Error(Errc::InvalidArgument, "worker count must be at least 1");
    if (!config.output) return run_to(config, out);
    std::ostringstream buffer;
    const int code = run_to(config, buffer);
    std::ofstream file(*config.output, std::ios::binary);
    if (!(file << buffer.str()) || !file.flush())
      throw Error(Errc::Io, "cannot write " + *config.output);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitUsage;
  }
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral-distance graphs on AG(m, q): construction, SRG certification and counting checks"};
  app.require_subcommand(1, 1);

  RunConfig config;
  config.workers = default_workers();
  std::string format = "json";
  std::string output;
  std::optional<std::uint64_t> size_bound;

  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output,-o", output, "Write the report to this file");
    sub->add_option("--workers", config.workers, "Worker threads (default: $INTEGRAL_SRG_WORKERS or all cores)")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--size-bound", size_bound, "Largest q^m to enumerate");
  };
  auto single = [&](const char* name, const char* help, Command cmd) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--q", config.q, "Field order (odd prime power)")->required();
    sub->add_option("--m", config.m, "Dimension (even)")->required();
    common(sub);
    sub->callback([&config, cmd] { config.command = cmd; });
    return sub;
  };
  single("params", "Closed-form parameters and feasibility", Command::Params);
  single("build", "Build the graph and report the distance census", Command::Build);
  auto* certify = single("certify", "Certify strong regularity by exhaustive counting", Command::Certify);
  certify->add_option("--dense-bound", config.dense_bound, "Largest v for the adjacency-matrix check");
  single("lemma", "Check every counting formula against enumeration", Command::Lemma);
  single("export", "Write the graph in graph6 format", Command::Export);

  auto* sweep = app.add_subcommand("sweep", "Certify and check a grid of (q, m)");
  sweep->add_option("--q", config.q_list, "Field orders, comma separated")->delimiter(',');
  sweep->add_option("--m", config.m_list, "Dimensions, comma separated")->delimiter(',');
  sweep->add_flag("--no-timing", config.no_timing, "Report wall_ms as 0");
  common(sweep);
  sweep->callback([&config] { config.command = Command::Sweep; });

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }
  config.format = formats.at(format);
  if (!output.empty()) config.output = output;
  if (size_bound) {
    config.size_bound = *size_bound;
    config.oracle_bound = *size_bound;
  }
  return run(config, out, err);
}

}  // namespace isrg::cli
