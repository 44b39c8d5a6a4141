#include "catalytic/cli.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "catalytic/continuity.hpp"
#include "catalytic/eigen.hpp"
#include "catalytic/measures.hpp"
#include "catalytic/state_io.hpp"

namespace catalytic::cli {

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("bad " + what + " \"" + text + "\"");
  return v;
}

Partition partition_for(const MeasureDescriptor& f, const Shape& shape) {
  if (f.partition_aware && shape.size() >= 2) return Partition::bipartite(shape);
  return Partition::single_party(shape);
}

MeasureDescriptor require_measure(const std::string& name) {
  auto f = find_measure(name);
  if (!f) {
    std::string known;
    for (const auto& m : measure_names()) known += (known.empty() ? "" : ", ") + m;
    throw std::invalid_argument("unknown measure \"" + name + "\" (known: " + known + ")");
  }
  return *f;
}

void set_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("--threads must be at least 1");
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

nlohmann::json mixture_json(const WordMixture& w) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : w.terms()) {
    std::string word;
    for (const Symbol s : t.word) word += s == kRho ? 'r' : 's';
    terms.push_back({{"weight", t.weight}, {"word", word}});
  }
  return terms;
}

void print_report(std::ostream& out, const AuditReport& r, bool claimed) {
  out << "  " << r.property << ": " << (r.pass() ? "PASS" : "FAIL") << (claimed ? "" : " (not claimed)")
      << "  max_residual=" << format_number(r.max_residual, 6) << "  tol=" << format_number(r.tolerance, 3)
      << "  evaluated=" << r.evaluated << "  worst=" << r.worst_index << '\n';
}

}  // namespace

std::vector<std::size_t> default_n_list() {
  std::vector<std::size_t> ns;
  for (std::size_t n = 2; n <= 10; ++n) ns.push_back(n);
  for (std::size_t n = 16; n <= 65536; n *= 2) ns.push_back(n);
  return ns;
}

DensityMatrix resolve_state(const std::string& source, const Shape& shape) {
  const std::size_t d = shape_dimension(shape);
  if (source == "pure0") {
    std::vector<double> p(d, 0.0);
    p[0] = 1.0;
    return DensityMatrix::from_diagonal(shape, p);
  }
  if (source == "mixed") return DensityMatrix::from_diagonal(shape, std::vector<double>(d, 1.0 / static_cast<double>(d)));
  if (source.rfind("random:", 0) == 0) {
    const std::string rest = source.substr(7);
    const auto colon = rest.find(':');
    const std::uint64_t seed = parse_u64(rest.substr(0, colon), "random seed");
    std::size_t rank = d;
    if (colon != std::string::npos) rank = parse_u64(rest.substr(colon + 1), "random rank");
    if (rank < 1 || rank > d) throw std::invalid_argument("random rank must lie in [1, " + std::to_string(d) + "]");
    return sample_random_state(shape, rank, seed);
  }
  DensityMatrix m = read_state_file(source);
  const auto rep = validate(m);
  if (!rep.ok())
    throw std::invalid_argument("state " + source + " is not a density matrix (hermitian residual " +
                                format_number(rep.hermitian_residual, 3) + ", min eigenvalue " +
                                format_number(rep.min_eigenvalue, 3) + ", trace residual " +
                                format_number(rep.trace_residual, 3) + ")");
  return m;
}

int cmd_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) {
    err << "error: n must be ≥ 2\n";
    return kUsageError;
  }
  const DensityMatrix rho = resolve_state(cfg.rho, cfg.shape);
  const DensityMatrix sigma = resolve_state(cfg.sigma, rho.shape());
  const ProtocolResult res = apply_protocol(rho, sigma, cfg.n, {cfg.dense_cap, cfg.method});

  out << "n = " << res.n << '\n';
  out << "achieved_error = " << format_number(res.achieved_error, 12) << '\n';
  out << "bound = " << format_number(res.bound, 12) << '\n';
  out << "exactness_residual = " << format_number(res.exactness_residual, 6)
      << (res.dense_checked ? " (dense)" : " (word level)") << '\n';
  out << "structural_match = " << (res.structural_match ? "yes" : "no") << '\n';
  out << "status = " << (res.ok() ? "ok" : "FAILED") << '\n';

  if (!cfg.json_dump.empty()) {
    nlohmann::json j = {{"n", res.n},
                        {"achieved_error", res.achieved_error},
                        {"bound", res.bound},
                        {"exactness_residual", res.exactness_residual},
                        {"dense_checked", res.dense_checked},
                        {"structural_match", res.structural_match},
                        {"ok", res.ok()},
                        {"input", mixture_json(res.input)},
                        {"output", mixture_json(res.output)}};
    std::ofstream f(cfg.json_dump);
    if (!f) throw std::invalid_argument("cannot write " + cfg.json_dump);
    f << j.dump(2) << '\n';
  }
  return res.ok() ? kOk : kInvariantFailure;
}

int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MeasureDescriptor f = require_measure(cfg.measure);
  const DensityMatrix rho = resolve_state(cfg.rho, cfg.shape);
  const DensityMatrix sigma = resolve_state(cfg.sigma, rho.shape());
  const std::vector<std::size_t> ns = cfg.n_list.empty() ? default_n_list() : cfg.n_list;

  DemoOptions opts;
  opts.K = cfg.K;
  opts.alphas = cfg.alpha_list;
  opts.eta = EtaModel::parse(cfg.eta);
  opts.method = cfg.method;
  opts.dense_cap = cfg.dense_cap;
  opts.audit_seed = cfg.seed;
  opts.partition = partition_for(f, rho.shape());

  const DemoTable table = theorem_demo(rho, sigma, f, ns, opts);
  const auto bad = check_demo_rows(table);
  const std::string csv = demo_csv(table);

  std::ostream* summary = &err;
  if (cfg.output.empty()) {
    out << csv;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot write " + cfg.output);
    file << csv;
    summary = &out;
  }

  std::ostream& s = *summary;
  s << "measure " << f.name << ", c = " << format_number(table.c, 12) << ", K = " << format_number(cfg.K, 6)
    << ", eta = " << opts.eta.name() << '\n';
  for (const auto& x : table.crossovers) {
    s << "alpha " << format_number(x.alpha, 6) << ": ";
    if (x.n)
      s << "crossover at first tested n = " << *x.n << '\n';
    else
      s << "no crossover on the tested grid\n";
  }
  for (const auto& dc : table.dense_checks)
    s << "dense check n = " << dc.n << ": |f(rho Gamma) - f(sigma Gamma)| = " << format_number(dc.gap_rho_sigma, 12)
      << ", |f(sigma Gamma') - f(rho Gamma)| = " << format_number(dc.gap_permuted, 3) << '\n';
  if (!table.rows.empty()) {
    const auto& last = table.rows.back();
    s << "eta(T) at n = " << last.n << ": " << format_number(last.eta, 6) << '\n';
  }
  for (const std::size_t i : bad)
    s << "row " << i << " (n = " << table.rows[i].n << ", alpha = " << format_number(table.rows[i].alpha, 6)
      << ") violates T <= bound_T\n";
  return bad.empty() ? kOk : kInvariantFailure;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const MeasureDescriptor f = require_measure(cfg.measure);
  const HypothesisAudit audit = audit_hypotheses(f, cfg.seed);

  out << "measure " << f.name << " (seed " << cfg.seed << ")\n";
  out << "[nonconstancy]\n";
  const bool witness_ok = audit.witness.has_value();
  if (witness_ok)
    out << "  witness: PASS  d=" << audit.witness->d << "  c=" << format_number(audit.witness->c, 12) << '\n';
  else
    out << "  witness: FAIL  no pair separated by more than " << format_number(kNonconstancyFloor, 3) << '\n';
  out << "[additivity]\n";
  print_report(out, audit.additivity, f.claims.additive);
  out << "[permutation invariance]\n";
  print_report(out, audit.permutation_invariance, f.claims.permutation_invariant);

  // Informational: asymptotic continuity with K = 1, alpha = 1, eta = tlog:1.
  const Partition part = f.partition_aware ? Partition::bipartite({2, 2}) : Partition::single_party({2});
  auto pairs = random_pair_battery(part, 16, cfg.seed);
  for (std::size_t i = 0; i < 8; ++i) {
    const DensityMatrix mu = sample_random_state(part.shape(), shape_dimension(part.shape()), cfg.seed + 100 + i);
    const DensityMatrix mixed = resolve_state("mixed", part.shape());
    CMatrix near = mu.entries();
    near *= complex(0.99);
    near.axpy(complex(0.01), mixed.entries());
    pairs.push_back({{mu, part}, {DensityMatrix(part.shape(), near), part}});
  }
  const ContinuityParams params{1.0, cfg.alpha, EtaModel::parse("tlog:1")};
  const ContinuityReport cont = audit_continuity(f, pairs, params);
  out << "[continuity]\n";
  out << "  K=1 alpha=" << format_number(cfg.alpha, 6) << " eta=" << params.eta.name() << ": "
      << (cont.violated() ? "VIOLATED" : "consistent") << "  max_excess=" << format_number(cont.max_violation, 6)
      << "  evaluated=" << cont.evaluated << " (informational)\n";

  bool ok = true;
  if (f.claims.nonconstant && !witness_ok) ok = false;
  if (f.claims.additive && !audit.additivity.pass()) ok = false;
  if (f.claims.permutation_invariant && !audit.permutation_invariance.pass()) ok = false;
  out << "claimed properties: " << (ok ? "all pass" : "FAILED") << '\n';
  return ok ? kOk : kInvariantFailure;
}

int cmd_state(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const bool preset = cfg.state_source == "pure0" || cfg.state_source == "mixed" ||
                      cfg.state_source.rfind("random:", 0) == 0;
  if (cfg.state_action == "validate") {
    // files are reported on rather than rejected
    const DensityMatrix m = preset ? resolve_state(cfg.state_source, cfg.shape) : read_state_file(cfg.state_source);
    const auto rep = validate(m);
    out << "shape " << shape_string(m.shape()) << ", D = " << m.dimension() << '\n';
    out << "hermitian_residual = " << format_number(rep.hermitian_residual, 6) << '\n';
    out << "min_eigenvalue = " << format_number(rep.min_eigenvalue, 12) << '\n';
    out << "trace_residual = " << format_number(rep.trace_residual, 6) << '\n';
    if (rep.ok()) out << "entropy = " << format_number(entropy(m), 12) << '\n';
    out << (rep.ok() ? "valid" : "INVALID") << '\n';
    return rep.ok() ? kOk : kInvariantFailure;
  }
  const DensityMatrix m = resolve_state(cfg.state_source, cfg.shape);
  StateFormat fmt = StateFormat::automatic;
  if (cfg.state_format == "entries")
    fmt = StateFormat::entries;
  else if (cfg.state_format == "diag")
    fmt = StateFormat::diagonal;
  else if (cfg.state_format != "auto")
    throw std::invalid_argument("unknown format \"" + cfg.state_format + "\" (auto | entries | diag)");
  if (cfg.output.empty())
    out << format_state_json(m, fmt);
  else
    write_state_file(cfg.output, m, fmt);
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Catalytic embezzlement protocol and continuity audit"};
  app.require_subcommand(1);
  std::string method = "auto";

  auto add_states = [&](CLI::App* sub) {
    sub->add_option("--rho", cfg.rho, "pure0 | mixed | random:SEED[:RANK] | state.json");
    sub->add_option("--sigma", cfg.sigma, "pure0 | mixed | random:SEED[:RANK] | state.json");
    sub->add_option("--shape", cfg.shape, "register dimensions of the presets, e.g. 2 or 2,2")->delimiter(',');
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--method", method, "trace distance route")->check(CLI::IsMember({"dense", "typeclass", "auto"}));
    sub->add_option("--dense-cap", cfg.dense_cap, "largest dense dimension");
    sub->add_option("--threads", cfg.threads, "OpenMP threads for the kernels");
    sub->add_option("--seed", cfg.seed, "audit seed");
  };

  auto* protocol = app.add_subcommand("protocol", "run rho (x) Gamma -> sigma (x) Gamma' and report the catalyst error");
  add_states(protocol);
  add_common(protocol);
  protocol->add_option("--n", cfg.n, "catalyst order");
  protocol->add_option("--json", cfg.json_dump, "write a JSON dump of the run");

  auto* demo = app.add_subcommand("demo", "evaluate the contradiction chain over n and alpha");
  add_states(demo);
  add_common(demo);
  demo->add_option("--n-list", cfg.n_list, "ascending n values")->delimiter(',');
  demo->add_option("--alpha-list", cfg.alpha_list, "continuity exponents")->delimiter(',');
  demo->add_option("--K", cfg.K, "continuity constant");
  demo->add_option("--eta", cfg.eta, "zero | linear:c | tlog:c");
  demo->add_option("--measure", cfg.measure, "measure name");
  demo->add_option("--output", cfg.output, "CSV path (stdout when omitted)");

  auto* audit = app.add_subcommand("audit", "audit a measure's hypotheses");
  audit->add_option("--measure", cfg.measure, "measure name");
  audit->add_option("--seed", cfg.seed, "audit seed");
  audit->add_option("--alpha", cfg.alpha, "continuity exponent for the informational check");
  audit->add_option("--threads", cfg.threads, "OpenMP threads for the kernels");

  auto* state = app.add_subcommand("state", "validate or convert JSON states");
  state->require_subcommand(1);
  auto* validate_cmd = state->add_subcommand("validate", "check a state");
  validate_cmd->add_option("source", cfg.state_source, "state file or preset")->required();
  validate_cmd->add_option("--shape", cfg.shape, "shape for presets")->delimiter(',');
  auto* convert_cmd = state->add_subcommand("convert", "rewrite a state");
  convert_cmd->add_option("source", cfg.state_source, "state file or preset")->required();
  convert_cmd->add_option("--shape", cfg.shape, "shape for presets")->delimiter(',');
  convert_cmd->add_option("--output", cfg.output, "output path (stdout when omitted)");
  convert_cmd->add_option("--format", cfg.state_format, "auto | entries | diag");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (method == "dense")
      cfg.method = DistanceMethod::dense;
    else if (method == "typeclass")
      cfg.method = DistanceMethod::typeclass;
    set_threads(cfg.threads);
    if (cfg.shape.empty()) throw std::invalid_argument("--shape is empty");
    for (const auto d : cfg.shape)
      if (d < 1) throw std::invalid_argument("register dimensions must be positive");

    if (protocol->parsed()) {
      cfg.subcommand = "protocol";
      return cmd_protocol(cfg, out, err);
    }
    if (demo->parsed()) {
      cfg.subcommand = "demo";
      return cmd_demo(cfg, out, err);
    }
    if (audit->parsed()) {
      cfg.subcommand = "audit";
      return cmd_audit(cfg, out, err);
    }
    cfg.subcommand = "state";
    cfg.state_action = validate_cmd->parsed() ? "validate" : "convert";
    return cmd_state(cfg, out, err);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace catalytic::cli
