// swlab: strip wetting model laboratory. Subcommands cover kernel tables,
// critical points, partition functions, contact/path sampling, statistics,
// and the one-shot acceptance verifier. Every run writes a manifest that can
// be fed back through --config to reproduce the outputs byte for byte.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swlab/accept.hpp"
#include "swlab/config.hpp"
#include "swlab/csv.hpp"
#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/partition.hpp"
#include "swlab/pinning.hpp"
#include "swlab/rng.hpp"
#include "swlab/sampler.hpp"
#include "swlab/series.hpp"
#include "swlab/spectral.hpp"
#include "swlab/stats.hpp"
#include "swlab/threads.hpp"
#include "swlab/version.hpp"

namespace {

using namespace swlab;

constexpr std::array<double, 3> kDeltas = {0.1, 0.05, 0.025};

struct FlagSet {
  std::string config_path;
  std::string a, beta, pinning, boundary, suite;
  int N = 0, grid = 0, nmax = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double eps = 0.0;
};

// Registers the flags shared by the model-building subcommands and returns
// the merge step: config file first, explicit flags on top.
std::function<Config()> add_model_flags(CLI::App* sub, FlagSet& fs) {
  sub->add_option("--config", fs.config_path,
                  "key=value config file (flags override it)");
  auto* oa = sub->add_option("--a", fs.a, "strip width: number, auto, auto:N^-p");
  auto* ob = sub->add_option("--beta", fs.beta,
                             "pinning strength: number or critical[+-x][/sqrtN]");
  auto* op = sub->add_option("--pinning", fs.pinning, "constant | smooth | zero");
  auto* obd = sub->add_option("--boundary", fs.boundary, "c | f");
  auto* on = sub->add_option("--N", fs.N, "horizon (number of steps)");
  auto* og = sub->add_option("--grid", fs.grid, "strip midpoint count M");
  auto* om = sub->add_option("--nmax", fs.nmax, "kernel table depth");
  auto* os = sub->add_option("--samples", fs.samples, "Monte Carlo sample count");
  auto* osd = sub->add_option("--seed", fs.seed, "RNG seed");
  return [=, &fs]() {
    Config cfg;
    if (!fs.config_path.empty()) cfg = Config::load(fs.config_path);
    if (oa->count()) cfg.set("pinning.a", fs.a);
    if (ob->count()) cfg.set("pinning.beta", fs.beta);
    if (op->count()) cfg.set("pinning.kind", fs.pinning);
    if (obd->count()) cfg.set("boundary", fs.boundary);
    if (on->count()) cfg.set("N", std::to_string(fs.N));
    if (og->count()) cfg.set("grid.points", std::to_string(fs.grid));
    if (om->count()) cfg.set("nmax", std::to_string(fs.nmax));
    if (os->count()) cfg.set("samples", std::to_string(fs.samples));
    if (osd->count()) cfg.set("rng.seed", std::to_string(fs.seed));
    return cfg;
  };
}

IncrementModel model_from(const Config& cfg) {
  const std::string name = cfg.str("model", "gaussian");
  if (name != "gaussian") {
    throw std::invalid_argument("unsupported model: " + name +
                                " (only gaussian ships with the CLI)");
  }
  return gaussian_model();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

void write_manifest(const Config& cfg, const std::string& path,
                    const std::vector<std::string>& resolved) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open manifest: " + path);
  os << "# swlab manifest; pass this file back via --config to reproduce\n";
  for (const std::string& r : resolved) os << "# resolved: " << r << "\n";
  os << cfg.manifest();
}

// ---------------------------------------------------------------------------
// swlab kernel

int run_kernel(Config cfg, const std::string& out) {
  const IncrementModel model = model_from(cfg);
  const int n_max = cfg.integer("nmax", 256);
  const int M = cfg.integer("grid.points", 32);
  const double a = resolve_strip_width(cfg.str("pinning.a", "0.2"),
                                       std::max(n_max, 1));
  const KernelTable kt = transfer_kernel(model, a, a > 0.0 ? M : 0, n_max);

  auto os = open_out(out);
  CsvWriter w(os);
  w.row({"n", "x", "y", "f_n_a", "f_n_closed_form", "ratio"});
  for (int n = 1; n <= n_max; ++n) {
    const double fn = closed_form_fn(n);
    for (int i = 0; i < kt.L; ++i) {
      for (int j = 0; j < kt.L; ++j) {
        const double v = kt.value(n, i, j);
        w.row({std::to_string(n), format_g(kt.xs[i]), format_g(kt.xs[j]),
               format_g(v), format_g(fn), format_g(v / fn)});
      }
    }
  }

  cfg.set("model", "gaussian");
  cfg.set("nmax", std::to_string(n_max));
  cfg.set("grid.points", std::to_string(M));
  cfg.set("pinning.a", cfg.str("pinning.a", "0.2"));
  cfg.set("version", kVersion);
  write_manifest(cfg, out + ".manifest", {"a = " + format_g(a)});
  return 0;
}

// ---------------------------------------------------------------------------
// swlab betac

int run_betac(Config cfg, const std::string& out) {
  const IncrementModel model = model_from(cfg);
  const int n_max = cfg.integer("nmax", 4096);
  const int M = cfg.integer("grid.points", 32);
  const double a =
      resolve_strip_width(cfg.str("pinning.a", "0.1"), std::max(n_max, 1));
  if (!(a > 0.0)) throw std::invalid_argument("betac: requires a > 0");

  const KernelTable kt = transfer_kernel(model, a, M, n_max);
  const double bca = critical_beta_strip(kt);
  const double gap = std::log(a) + bca - beta_c_exact();

  auto os = open_out(out);
  CsvWriter w(os);
  w.row({"a", "beta_c_a", "log_a_plus_gap", "ratio_a_exp"});
  w.row({format_g(a), format_g(bca), format_g(gap), format_g(std::exp(gap))});

  cfg.set("model", "gaussian");
  cfg.set("nmax", std::to_string(n_max));
  cfg.set("grid.points", std::to_string(M));
  cfg.set("pinning.a", cfg.str("pinning.a", "0.1"));
  cfg.set("version", kVersion);
  write_manifest(cfg, out + ".manifest",
                 {"a = " + format_g(a), "beta_c_a = " + format_g(bca)});
  return 0;
}

// ---------------------------------------------------------------------------
// Shared strip-model assembly for partition and the samplers.

struct Ensemble {
  IncrementModel model;
  int N = 0, M = 0, n_max = 0;
  double a = 0.0;
  double bca = 0.0;
  char alpha = 'f';
  PinningFunction pin;
  KernelTable kt;
  SurvivalTable st;
  StripPartitionTable strip;
  SpectralResult guard;
};

Ensemble build_ensemble(Config& cfg, const std::string& default_pinning,
                        int default_N, int default_grid) {
  Ensemble e;
  e.model = model_from(cfg);
  e.N = cfg.integer("N", default_N);
  if (e.N < 1) throw std::invalid_argument("N must be >= 1");
  e.M = cfg.integer("grid.points", default_grid);
  e.n_max = cfg.integer("nmax", e.N);
  e.a = resolve_strip_width(cfg.str("pinning.a", "auto"), e.N);
  if (!(e.a > 0.0)) throw std::invalid_argument("strip commands require a > 0");

  e.kt = transfer_kernel(e.model, e.a, e.M, e.n_max);
  e.st = survival(e.model, e.a, e.M, e.N);
  e.bca = critical_beta_strip(e.kt);

  const std::string kind = cfg.str("pinning.kind", default_pinning);
  if (kind == "constant") {
    const BetaSpec bs = parse_beta_spec(cfg.str("pinning.beta", "critical"));
    e.pin = make_constant_pinning(e.a, resolve_beta(bs, e.bca, e.N));
  } else if (kind == "smooth") {
    e.pin = make_smooth_bump_pinning(e.a);
  } else if (kind == "zero") {
    e.pin = make_zero_pinning(e.a);
  } else {
    throw std::invalid_argument("unknown pinning.kind: " + kind);
  }
  const std::string b = cfg.str("boundary", "f");
  if (b != "c" && b != "f") {
    throw std::invalid_argument("boundary must be c or f");
  }
  e.alpha = b[0];

  e.strip = strip_partition(e.pin, e.kt, e.st, e.N);
  e.guard = leading_eigen(build_resolvent(e.kt, 0.0));

  // Echo the fully resolved configuration for the manifest.
  cfg.set("model", "gaussian");
  cfg.set("N", std::to_string(e.N));
  cfg.set("grid.points", std::to_string(e.M));
  cfg.set("nmax", std::to_string(e.n_max));
  cfg.set("pinning.a", cfg.str("pinning.a", "auto"));
  cfg.set("pinning.kind", kind);
  if (kind == "constant") {
    cfg.set("pinning.beta", cfg.str("pinning.beta", "critical"));
  }
  cfg.set("boundary", b);
  cfg.set("version", kVersion);
  return e;
}

std::vector<std::string> ensemble_notes(const Ensemble& e) {
  std::vector<std::string> notes = {"a = " + format_g(e.a),
                                    "beta_c_a = " + format_g(e.bca)};
  if (e.pin.kind == PinningFunction::Kind::constant) {
    notes.push_back("beta = " + format_g(e.pin.beta));
  }
  return notes;
}

// ---------------------------------------------------------------------------
// swlab partition

int run_partition(Config cfg, const std::string& out) {
  Ensemble e = build_ensemble(cfg, "smooth", 256, 16);

  // Single-constant renewal sandwich for Zc (Condition (A) score measured in
  // the DP's own midpoint quadrature, C0 from the kernel-ratio envelope).
  long double mass = 0.0L;
  for (int j = 0; j < e.kt.grid.M; ++j) {
    mass += e.kt.grid.w * std::exp(e.pin.eval(e.kt.grid.x[j]));
  }
  const double s =
      (std::log(static_cast<double>(mass)) - beta_c_exact()) / e.a;
  double c0 = 0.0;
  for (int n = 1; n <= e.kt.n_max; ++n) {
    c0 = std::max(
        c0, -std::log(e.kt.value(n, 0, 0) / closed_form_fn(n)) / e.a);
  }
  const double cp = std::max({s, c0 - s, 0.01});
  const RenewalTables low = renewal_tables(beta_c_exact() - cp * e.a, e.N);
  const RenewalTables up = renewal_tables(beta_c_exact() + cp * e.a, e.N);

  auto os = open_out(out);
  CsvWriter w(os);
  w.row({"N", "Zc", "Zf", "lower_sandwich", "upper_sandwich"});
  for (int m = 1; m <= e.N; ++m) {
    w.row({std::to_string(m), format_g(std::exp(e.strip.log_zc(m, 0))),
           format_g(std::exp(e.strip.log_zf(m, 0))),
           format_g(std::exp(low.log_zc[m])),
           format_g(std::exp(up.log_zc[m]))});
  }

  write_manifest(cfg, out + ".manifest", ensemble_notes(e));
  return 0;
}

// ---------------------------------------------------------------------------
// swlab sample-contacts / sample-paths

struct PathFunctionals {
  double last_zero = 0.0;
  long long n_contacts = 0;
  double endpoint = 0.0;
  double midpoint = 0.0;
  std::array<double, 3> gamma{};
  std::array<double, 3> gamma_tilde{};
};

int run_sampling(Config cfg, const std::string& out_dir, bool with_paths) {
  Ensemble e = build_ensemble(cfg, "constant", 4096, 8);
  const std::int64_t S = cfg.integer64("samples", 10000);
  if (S < 1) throw std::invalid_argument("samples must be >= 1");
  const std::uint64_t seed = static_cast<std::uint64_t>(
      cfg.integer64("rng.seed", 1));
  cfg.set("samples", std::to_string(S));
  cfg.set("rng.seed", std::to_string(seed));

  std::vector<ContactSet> sets(S);
  std::vector<PathFunctionals> fns(with_paths ? S : 0);
  parallel_for(S, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    sets[i] =
        sample_contacts_markov_renewal(e.strip, e.kt, e.guard, e.N, e.alpha, rng);
    if (!with_paths) return;
    const PathSample path = assemble_path(sets[i], e.model, e.a, rng);
    PathFunctionals& f = fns[i];
    f.last_zero = summarize_contacts(sets[i]).last_zero;
    f.n_contacts = static_cast<long long>(sets[i].times.size());
    f.endpoint = path.X(1.0);
    f.midpoint = path.X(0.5);
    for (std::size_t d = 0; d < kDeltas.size(); ++d) {
      const OscillationStat osc = oscillation_stat(path, kDeltas[d]);
      f.gamma[d] = osc.gamma;
      f.gamma_tilde[d] = osc.gamma_tilde;
    }
  });

  std::filesystem::create_directories(out_dir);
  {
    auto os = open_out(out_dir + "/contacts.csv");
    CsvWriter w(os);
    w.row({"N", "sample_id", "index", "position"});
    for (std::int64_t i = 0; i < S; ++i) {
      for (std::size_t k = 0; k < sets[i].times.size(); ++k) {
        w.row({std::to_string(e.N), std::to_string(i),
               std::to_string(sets[i].times[k]),
               format_g(sets[i].positions[k])});
      }
    }
  }
  if (with_paths) {
    auto os = open_out(out_dir + "/functionals.csv");
    CsvWriter w(os);
    std::vector<std::string> head = {"sample_id", "last_zero", "n_contacts",
                                     "endpoint", "midpoint"};
    for (double d : kDeltas) head.push_back("gamma_" + format_g(d));
    for (double d : kDeltas) head.push_back("gamma_tilde_" + format_g(d));
    w.row(head);
    for (std::int64_t i = 0; i < S; ++i) {
      const PathFunctionals& f = fns[i];
      std::vector<std::string> row = {
          std::to_string(i), format_g(f.last_zero),
          std::to_string(f.n_contacts), format_g(f.endpoint),
          format_g(f.midpoint)};
      for (double g : f.gamma) row.push_back(format_g(g));
      for (double g : f.gamma_tilde) row.push_back(format_g(g));
      w.row(row);
    }
  }
  write_manifest(cfg, out_dir + "/manifest.txt", ensemble_notes(e));
  return 0;
}

// ---------------------------------------------------------------------------
// swlab stats

std::size_t column_of(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  throw std::invalid_argument("missing CSV column: " + name);
}

std::vector<double> column_values(const CsvTable& t, const std::string& name) {
  const std::size_t c = column_of(t, name);
  std::vector<double> v;
  v.reserve(t.rows.size());
  for (const auto& r : t.rows) v.push_back(std::stod(r[c]));
  return v;
}

int run_stats(const std::string& in_dir, Config cfg, const std::string& out) {
  const Config manifest = Config::load(in_dir + "/manifest.txt");
  const int N = manifest.integer("N", 0);
  if (N < 1) throw std::invalid_argument("stats: manifest lacks N");
  const std::string boundary = manifest.str("boundary", "f");
  const CsvTable fn = read_csv(in_dir + "/functionals.csv");
  const std::string suite = cfg.str("suite", "scaling");

  std::vector<StatReport> reports;
  if (suite == "scaling") {
    if (boundary != "f") {
      throw std::invalid_argument(
          "stats: the scaling suite needs free-boundary samples");
    }
    std::vector<double> lz = column_values(fn, "last_zero");
    std::vector<double> counts = column_values(fn, "n_contacts");
    std::vector<double> scaled(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      scaled[i] = local_time_b() * counts[i] / std::sqrt(double(N));
    }
    reports.push_back(
        ks_report("last_zero_arcsine", lz, RefLaw::arcsine, 1.0, 0.03));
    reports.push_back(ks_report("local_time_half_normal", scaled,
                                RefLaw::half_normal, 1.0, 0.05));
  } else if (suite == "paths") {
    if (boundary == "c") {
      std::vector<double> mid = column_values(fn, "midpoint");
      for (double& v : mid) v = std::abs(v);
      reports.push_back(
          path_marginal_report("midpoint_folded_normal", mid, 'c', 0.5, 0.05));
    } else {
      std::vector<double> endv = column_values(fn, "endpoint");
      for (double& v : endv) v = std::abs(v);
      reports.push_back(
          path_marginal_report("endpoint_half_normal", endv, 'f', 1.0, 0.05));
    }
    // Tightness trend: P(Gamma(delta) > 1/2) must not increase as delta
    // shrinks (it is a per-path monotone functional).
    std::array<double, 3> frac{};
    for (std::size_t d = 0; d < kDeltas.size(); ++d) {
      const std::vector<double> g =
          column_values(fn, "gamma_" + format_g(kDeltas[d]));
      for (double v : g) frac[d] += v > 0.5 ? 1.0 : 0.0;
      frac[d] /= static_cast<double>(g.size());
    }
    StatReport trend;
    trend.test = "gamma_tightness_trend";
    trend.law = "monotone";
    trend.samples = static_cast<std::int64_t>(fn.rows.size());
    trend.statistic = std::max(frac[1] - frac[0], frac[2] - frac[1]);
    trend.threshold = 0.0;
    trend.pass = trend.statistic <= 0.0;
    reports.push_back(trend);
  } else if (suite == "mgf") {
    if (boundary != "f") {
      throw std::invalid_argument(
          "stats: the mgf suite needs free-boundary samples");
    }
    const double eps = cfg.num("eps", 1.0);
    std::vector<double> counts = column_values(fn, "n_contacts");
    std::vector<double> scaled(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      scaled[i] = local_time_b() * counts[i] / std::sqrt(double(N));
    }
    const MgfEstimate est = local_time_mgf(scaled, eps);
    const double phi = 0.5 * std::erfc(-eps / std::sqrt(2.0));
    const double target = 2.0 * std::exp(0.5 * eps * eps) * phi;
    StatReport r;
    r.test = "local_time_mgf_eps_" + format_g(eps);
    r.law = "half_normal_mgf";
    r.param = eps;
    r.samples = est.samples;
    r.statistic = std::abs(est.value / target - 1.0);
    r.threshold = 0.05;
    r.pass = r.statistic < r.threshold;
    reports.push_back(r);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  auto os = open_out(out);
  CsvWriter w(os);
  w.row({"test", "N", "M", "statistic", "threshold", "pass"});
  for (StatReport& r : reports) {
    w.row({r.test, std::to_string(N), std::to_string(r.samples),
           format_g(r.statistic), format_g(r.threshold), r.pass ? "1" : "0"});
  }

  cfg.set("suite", suite);
  cfg.set("version", kVersion);
  write_manifest(cfg, out + ".manifest", {"in = " + in_dir});
  for (const StatReport& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// swlab verify

int run_verify(int criterion, const std::string& out) {
  std::vector<accept::CriterionResult> results;
  if (criterion > 0) {
    results.push_back(accept::run_criterion(criterion));
  } else {
    for (int id = 1; id <= accept::criterion_count(); ++id) {
      results.push_back(accept::run_criterion(id));
      const accept::CriterionResult& r = results.back();
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id
                << " " << r.name << " (" << format_g(r.seconds) << "s)\n";
      std::cout.flush();
    }
  }
  bool all = true;
  for (const accept::CriterionResult& r : results) {
    all = all && r.pass;
    if (criterion > 0) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id
                << " " << r.name << " (" << format_g(r.seconds) << "s)\n";
    }
    for (const accept::CheckLine& c : r.lines) {
      std::cout << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << " = "
                << format_g(c.statistic) << " " << c.relation << " "
                << format_g(c.threshold) << "\n";
    }
    if (!r.error.empty()) std::cout << "    error: " << r.error << "\n";
    if (!r.pass) {
      std::cout << "    -> criterion " << r.id << " (" << r.name
                << ") FAILED\n";
    }
  }
  if (!out.empty()) accept::write_report_csv(out, results);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strip wetting model laboratory"};
  app.require_subcommand(1);

  FlagSet fk, fb, fp, fc, fs;
  std::string out_kernel = "kernels.csv", out_betac = "betac.csv";
  std::string out_partition = "partition.csv";
  std::string out_contacts = "contacts_out", out_paths = "paths_out";
  std::string stats_in, stats_out = "report.csv", stats_config;
  std::string stats_suite;
  double stats_eps = 1.0;
  int verify_criterion = 0;
  std::string verify_out = "report.csv";

  auto* sk = app.add_subcommand("kernel", "excursion kernel table -> CSV");
  auto merge_k = add_model_flags(sk, fk);
  sk->add_option("--out", out_kernel, "output CSV path");

  auto* sb = app.add_subcommand("betac", "strip critical point -> CSV");
  auto merge_b = add_model_flags(sb, fb);
  sb->add_option("--out", out_betac, "output CSV path");

  auto* sp = app.add_subcommand("partition", "partition tables -> CSV");
  auto merge_p = add_model_flags(sp, fp);
  sp->add_option("--out", out_partition, "output CSV path");

  auto* sc = app.add_subcommand("sample-contacts", "contact-set samples -> dir");
  auto merge_c = add_model_flags(sc, fc);
  sc->add_option("--out", out_contacts, "output directory");

  auto* ss = app.add_subcommand("sample-paths", "path samples -> dir");
  auto merge_s = add_model_flags(ss, fs);
  ss->add_option("--out", out_paths, "output directory");

  auto* st = app.add_subcommand("stats", "statistics suite over a sample dir");
  st->add_option("--in", stats_in, "sample directory (from sample-paths)")
      ->required();
  st->add_option("--config", stats_config, "key=value config file");
  auto* opt_suite = st->add_option("--suite", stats_suite, "scaling | paths | mgf");
  auto* opt_eps = st->add_option("--eps", stats_eps, "MGF argument (mgf suite)");
  st->add_option("--out", stats_out, "report CSV path");

  auto* sv = app.add_subcommand("verify", "run the acceptance suite");
  sv->add_option("--criterion", verify_criterion, "run a single criterion id");
  sv->add_option("--out", verify_out, "report CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sk->parsed()) return run_kernel(merge_k(), out_kernel);
    if (sb->parsed()) return run_betac(merge_b(), out_betac);
    if (sp->parsed()) return run_partition(merge_p(), out_partition);
    if (sc->parsed()) return run_sampling(merge_c(), out_contacts, false);
    if (ss->parsed()) return run_sampling(merge_s(), out_paths, true);
    if (st->parsed()) {
      Config cfg;
      if (!stats_config.empty()) cfg = Config::load(stats_config);
      if (opt_suite->count()) cfg.set("suite", stats_suite);
      if (opt_eps->count()) cfg.set("eps", format_g(stats_eps));
      return run_stats(stats_in, cfg, stats_out);
    }
    if (sv->parsed()) return run_verify(verify_criterion, verify_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
