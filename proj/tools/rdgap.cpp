// rdgap: command-line entry point.
//
//   rdgap wf        --spectrum S --distortion-grid a:b:step
//   rdgap rdrc      --spectrum S --rate-grid a:b:step
//   rdgap gap-sweep --dstar-grid a:b:step --kmax K --seed N
//   rdgap simulate  --mode {scheme|success|coupling|filter} ...
//   rdgap version
//
// Every CSV starts with `# rdgap <version> <subcommand> manifest=<digest>`
// where the digest covers the resolved parameters. With --out (or --svg) a
// `<file>.manifest.json` is written next to the output.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdgap/errors.hpp"
#include "rdgap/format.hpp"
#include "rdgap/gapopt.hpp"
#include "rdgap/io.hpp"
#include "rdgap/random.hpp"
#include "rdgap/rdrc.hpp"
#include "rdgap/simulator.hpp"
#include "rdgap/waterfill.hpp"

using json = nlohmann::json;
using namespace rdgap;

namespace {

unsigned thread_budget() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("RDGAP_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw InvalidArgument("RDGAP_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

struct Outputs {
  std::string out;
  std::string svg;
  std::string config;
};

void add_output_flags(CLI::App* sub, Outputs& o, bool with_svg) {
  sub->add_option("--out", o.out, "CSV output file (standard output when omitted)");
  if (with_svg) sub->add_option("--svg", o.svg, "SVG plot output file");
  sub->add_option("--config", o.config, "JSON file with flag values; explicit flags win");
}

// Fills options that were not given on the command line from a flat JSON
// object whose keys are long flag names without the leading dashes.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw InvalidArgument("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "config") throw InvalidArgument("config files cannot nest");
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + flag);
    } catch (const CLI::OptionNotFound&) {
      throw InvalidArgument("unknown key '" + key + "' in config for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      text = value.dump();
    } else if (value.is_number()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
      text = buf;
    } else {
      throw InvalidArgument("config key '" + key + "' must be a string, number or boolean");
    }
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::ParseError& e) {
      throw InvalidArgument("config key '" + key + "': " + e.what());
    }
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << bytes;
  if (!f) throw InvalidArgument("failed writing '" + path + "'");
}

// All file and stream output of a subcommand goes through here.
void emit(const std::string& sub, const json& params, const std::string& csv_body,
          const std::optional<std::string>& svg, const Outputs& o) {
  const std::string params_digest = sha256_hex(params.dump());
  const std::string csv =
      "# rdgap " + std::string(kVersion) + ' ' + sub + " manifest=" + params_digest + '\n' + csv_body;

  json outputs = json::array();
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_file(o.out, csv);
    outputs.push_back({{"path", o.out}, {"sha256", sha256_hex(csv)}});
  }
  if (svg && !o.svg.empty()) {
    write_file(o.svg, *svg);
    outputs.push_back({{"path", o.svg}, {"sha256", sha256_hex(*svg)}});
  }
  if (outputs.empty()) return;
  const json manifest = {{"subcommand", sub},
                         {"version", kVersion},
                         {"generator", kGeneratorName},
                         {"params", params},
                         {"params_sha256", params_digest},
                         {"outputs", outputs}};
  const std::string base = o.out.empty() ? o.svg : o.out;
  write_file(base + ".manifest.json", manifest.dump(2) + '\n');
}

// ---------------------------------------------------------------- wf / rdrc

struct CurveArgs {
  std::string spectrum = "flat";
  std::string grid;
  bool compare = false;
  Outputs io;
};

void cmd_wf(const CurveArgs& a) {
  const Spectrum s = parse_spectrum(a.spectrum);
  const std::vector<double> grid = parse_grid(a.grid);
  std::string body = "d_star,t,rate_bits\n";
  PlotSeries wf{"waterfilling", {}, {}}, rc{"random coding", {}, {}};
  for (double d : grid) {
    const WfPoint p = wf_point_at_distortion(s, d);
    body += csv_row({format_short(d), format_short(p.level_t), format_short(p.rate_bits)});
    wf.x.push_back(d);
    wf.y.push_back(p.rate_bits);
    if (a.compare) {
      rc.x.push_back(d);
      rc.y.push_back(rr_rc(s, d));
    }
  }
  Plot plot{"Waterfilling rate vs distortion", "distortion D*", "rate (bits/dim)", {wf}};
  if (a.compare) plot.series.push_back(rc);
  const json params = {{"spectrum", s.to_literal()}, {"distortion_grid", grid}, {"compare", a.compare}};
  emit("wf", params, body, render_svg(plot), a.io);
}

void cmd_rdrc(const CurveArgs& a) {
  const Spectrum s = parse_spectrum(a.spectrum);
  const std::vector<double> grid = parse_grid(a.grid);
  std::string body = "rate_bits,T,d_rc\n";
  PlotSeries rc{"random coding", {}, {}}, wf{"waterfilling", {}, {}};
  for (double r : grid) {
    const RcPoint p = rc_point_at_rate(s, r);
    body += csv_row({format_short(r), format_short(p.level_T), format_short(p.distortion)});
    rc.x.push_back(r);
    rc.y.push_back(p.distortion);
    if (a.compare) {
      wf.x.push_back(r);
      wf.y.push_back(dd_wf(s, r));
    }
  }
  Plot plot{"Random-coding distortion vs rate", "rate (bits/dim)", "distortion", {rc}};
  if (a.compare) plot.series.push_back(wf);
  const json params = {{"spectrum", s.to_literal()}, {"rate_grid", grid}, {"compare", a.compare}};
  emit("rdrc", params, body, render_svg(plot), a.io);
}

// ---------------------------------------------------------------- gap-sweep

struct SweepArgs {
  std::string grid = "0.005:0.995:0.005";
  int kmax = 5;
  std::uint64_t seed = 1;
  int restarts_per_k = 16;
  int grid_cells = 512;
  int max_evals = 1500;
  Outputs io;
};

void cmd_gap_sweep(const SweepArgs& a) {
  const std::vector<double> grid = parse_grid(a.grid);
  SearchConfig cfg;
  cfg.seed = a.seed;
  cfg.restarts_per_k = a.restarts_per_k;
  cfg.grid_cells_per_k = a.grid_cells;
  cfg.max_evaluations = a.max_evals;
  const SweepResult result = sweep(grid, a.kmax, cfg, thread_budget());

  PlotSeries gap{"max gap", {}, {}};
  for (const GapSearch& p : result.points) {
    gap.x.push_back(p.best.rate_rc_bits);
    gap.y.push_back(p.best.gap_bits);
  }
  const Plot plot{"Maximum rate gap over spectra", "random-coding rate (bits/dim)", "gap (bits/dim)", {gap}};
  const json params = {{"dstar_grid", grid},         {"kmax", a.kmax},
                       {"seed", a.seed},             {"restarts_per_k", a.restarts_per_k},
                       {"grid_cells", a.grid_cells}, {"max_evals", a.max_evals}};
  emit("gap-sweep", params, sweep_csv(result), render_svg(plot), a.io);

  const GapRecord& best = result.global_max();
  std::ostream& summary = a.io.out.empty() ? std::cerr : std::cout;
  summary << "global max gap " << format_fixed(best.gap_bits, 6) << " bits at d_star "
          << format_short(best.d_star) << " (rate_rc_bits " << format_fixed(best.rate_rc_bits, 6)
          << ", spectrum " << best.spectrum.to_literal() << ")\n";
}

// ---------------------------------------------------------------- simulate

struct SimArgs {
  std::string mode = "scheme";
  std::size_t n = 8;
  double rate = 1.0;
  std::string spectrum = "flat";
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string rotation = "identity";
  std::optional<double> tau_delta;
  std::optional<double> tau_threshold;
  double eta = 0.05;
  std::size_t w_batches = 1;
  std::size_t codebook_cap = std::size_t{1} << 22;
  std::optional<double> t;
  std::optional<double> T;
  Outputs io;
};

std::string opt_str(const std::optional<double>& v) { return v ? format_short(*v) : ""; }

void cmd_simulate(const SimArgs& a) {
  SimConfig c;
  c.n = a.n;
  c.rate_bits = a.rate;
  c.spectrum = parse_spectrum(a.spectrum);
  c.trials = a.trials;
  c.seed = a.seed;
  c.rotation = rotation_from_string(a.rotation);
  c.tau_delta = a.tau_delta;
  c.tau_threshold = a.tau_threshold;
  c.eta = a.eta;
  c.w_batches = a.w_batches;
  c.codebook_cap = a.codebook_cap;
  c.threads = thread_budget();
  if (c.tau_delta) detail::require(*c.tau_delta > 0.0, "--tau-delta must be positive");
  if (c.tau_threshold) detail::require(*c.tau_threshold >= 0.0, "--tau-threshold must be nonnegative");

  SimReport r;
  if (a.mode == "scheme") {
    r = run_universal_scheme(c);
  } else if (a.mode == "success") {
    r = estimate_codeword_success(c);
  } else if (a.mode == "coupling") {
    detail::require(a.t.has_value(), "coupling mode needs --t");
    r = simulate_wf_coupling(c.spectrum, *a.t, c.n, c.trials, c.seed, c.threads);
  } else if (a.mode == "filter") {
    detail::require(a.T.has_value(), "filter mode needs --T");
    r = simulate_mmse_filter(c.spectrum, *a.T, c.n, c.trials, c.seed, c.rotation, c.threads);
  } else {
    throw InvalidArgument("--mode must be scheme, success, coupling or filter");
  }

  std::string warnings;
  for (const std::string& w : r.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
  std::string body = csv_row({"mode", "n", "rate_bits", "spectrum", "trials", "seed", "rotation",
                              "tau_delta", "tau_threshold", "eta", "w_batches", "t", "T",
                              "mean_distortion", "standard_error", "analytic_target",
                              "codebook_size", "mean_tau", "zero_fallbacks", "successes", "draws",
                              "p_hat", "wilson_low", "wilson_high", "exponent_bits",
                              "exponent_lower_bound", "warnings"});
  const bool success = a.mode == "success";
  const bool scheme = a.mode == "scheme";
  body += csv_row({a.mode, std::to_string(c.n), format_short(c.rate_bits), c.spectrum.to_literal(),
                   std::to_string(c.trials), std::to_string(c.seed), to_string(c.rotation),
                   opt_str(c.tau_delta), opt_str(c.tau_threshold), format_short(c.eta),
                   std::to_string(c.w_batches), opt_str(a.t), opt_str(a.T),
                   format_short(r.mean_distortion), format_short(r.standard_error),
                   format_short(r.analytic_target),
                   scheme ? std::to_string(r.codebook_size) : "",
                   scheme ? format_short(r.mean_tau) : "",
                   scheme ? std::to_string(r.zero_fallbacks) : "",
                   success ? std::to_string(r.successes) : "",
                   success ? std::to_string(r.draws) : "",
                   success ? format_short(r.p_hat) : "",
                   success ? format_short(r.wilson_low) : "",
                   success ? format_short(r.wilson_high) : "",
                   success ? opt_str(r.exponent_bits) : "",
                   success ? format_short(r.exponent_lower_bound) : "", warnings});

  json params = {{"mode", a.mode},
                 {"n", c.n},
                 {"rate", c.rate_bits},
                 {"spectrum", c.spectrum.to_literal()},
                 {"trials", c.trials},
                 {"seed", c.seed},
                 {"rotation", to_string(c.rotation)},
                 {"eta", c.eta},
                 {"w_batches", c.w_batches},
                 {"codebook_cap", c.codebook_cap}};
  params["tau_delta"] = c.tau_delta ? json(*c.tau_delta) : json(nullptr);
  params["tau_threshold"] = c.tau_threshold ? json(*c.tau_threshold) : json(nullptr);
  params["t"] = a.t ? json(*a.t) : json(nullptr);
  params["T"] = a.T ? json(*a.T) : json(nullptr);
  emit("simulate", params, body, std::nullopt, a.io);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdgap: waterfilling vs random-coding rate-distortion curves, universality gap, "
               "and Monte-Carlo validation"};
  app.name("rdgap");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  CurveArgs wf_args, rc_args;
  wf_args.grid = "0.05:0.95:0.05";
  rc_args.grid = "0.25:4:0.25";
  CLI::App* wf = app.add_subcommand("wf", "Waterfilling curve: water level and rate on a distortion grid");
  wf->add_option("--spectrum", wf_args.spectrum, "Spectrum literal: v:w,...  flat  semiflat:f  @file.csv");
  wf->add_option("--distortion-grid", wf_args.grid, "Distortion grid a:b:step");
  wf->add_flag("--compare", wf_args.compare, "Overlay the random-coding curve in the SVG");
  add_output_flags(wf, wf_args.io, true);

  CLI::App* rc = app.add_subcommand("rdrc", "Random-coding curve: T and distortion on a rate grid");
  rc->add_option("--spectrum", rc_args.spectrum, "Spectrum literal: v:w,...  flat  semiflat:f  @file.csv");
  rc->add_option("--rate-grid", rc_args.grid, "Rate grid a:b:step (bits per dimension)");
  rc->add_flag("--compare", rc_args.compare, "Overlay the waterfilling curve in the SVG");
  add_output_flags(rc, rc_args.io, true);

  SweepArgs sw;
  CLI::App* gs = app.add_subcommand("gap-sweep", "Worst-case universality gap over spectra on a D* grid");
  gs->add_option("--dstar-grid", sw.grid, "Distortion grid a:b:step within [0.005, 0.995]");
  gs->add_option("--kmax", sw.kmax, "Maximum number of distinct eigenvalue levels (1..5)");
  gs->add_option("--seed", sw.seed, "Search seed");
  gs->add_option("--restarts-per-k", sw.restarts_per_k,
                 "Simplex restarts per level count k = 2..kmax at each grid point");
  gs->add_option("--grid-cells", sw.grid_cells, "Coarse-grid cells scored per level count");
  gs->add_option("--max-evals", sw.max_evals, "Objective evaluations per simplex run");
  add_output_flags(gs, sw.io, true);

  SimArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo runs of the Gaussian-codebook scheme and test channels");
  sim->add_option("--mode", sa.mode, "scheme | success | coupling | filter")
      ->check(CLI::IsMember({"scheme", "success", "coupling", "filter"}));
  sim->add_option("--n", sa.n, "Dimension")->check(CLI::PositiveNumber);
  sim->add_option("--rate", sa.rate, "Rate in bits per dimension (scheme, success)");
  sim->add_option("--spectrum", sa.spectrum, "Spectrum literal: v:w,...  flat  semiflat:f  @file.csv");
  sim->add_option("--trials", sa.trials, "Trials (scheme, coupling, filter) or codewords per W batch (success)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", sa.seed, "Seed for every random stream");
  sim->add_option("--rotation", sa.rotation, "identity | haar")->check(CLI::IsMember({"identity", "haar"}));
  sim->add_option("--tau-delta", sa.tau_delta, "Quantize tau to multiples of delta * max|W~|");
  sim->add_option("--tau-threshold", sa.tau_threshold,
                  "Use tau = 0 when max|W~| exceeds this, and admit the zero reconstruction");
  sim->add_option("--eta", sa.eta, "Success-mode distortion slack");
  sim->add_option("--w-batches", sa.w_batches, "Success mode: number of W realizations")->check(CLI::PositiveNumber);
  sim->add_option("--codebook-cap", sa.codebook_cap, "Largest codebook allowed");
  sim->add_option("--t", sa.t, "Coupling mode: water level t");
  sim->add_option("--T", sa.T, "Filter mode: noise parameter T");
  add_output_flags(sim, sa.io, false);

  app.add_subcommand("version", "Print version and generator identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "rdgap: error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand("version")) {
      std::cout << "rdgap " << kVersion << " (rng " << kGeneratorName << ")\n";
    } else if (app.got_subcommand(wf)) {
      apply_config(wf, wf_args.io.config);
      cmd_wf(wf_args);
    } else if (app.got_subcommand(rc)) {
      apply_config(rc, rc_args.io.config);
      cmd_rdrc(rc_args);
    } else if (app.got_subcommand(gs)) {
      apply_config(gs, sw.io.config);
      cmd_gap_sweep(sw);
    } else if (app.got_subcommand(sim)) {
      apply_config(sim, sa.io.config);
      cmd_simulate(sa);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "rdgap: error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "rdgap: numeric failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rdgap: failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
