// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "cli_util.hpp"
#include "oracle.hpp"
#include "rdgap/errors.hpp"
#include "rdgap/gapopt.hpp"
#include "rdgap/io.hpp"
#include "rdgap/random.hpp"
#include "rdgap/rdrc.hpp"
#include "rdgap/simulator.hpp"
#include "rdgap/waterfill.hpp"

using namespace rdgap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome gaussian_closed_form() {
  double worst = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double exact = std::exp2(-2.0 * r);
    worst = std::max(worst, std::abs(dd_wf(Spectrum::flat(), r) - exact));
    worst = std::max(worst, std::abs(dd_rc(Spectrum::flat(), r) - exact));
  }
  return {worst < 1e-10, "max |dd - 2^(-2R)| = " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome semi_flat_equality() {
  double worst = 0.0;
  for (double f : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (int i = 1; i <= 19; ++i) worst = std::max(worst, std::abs(gap_at(Spectrum::semi_flat(f), 0.05 * i).gap_bits));
  }
  return {worst < 1e-9, "max |gap| = " + fmt("%.2e", worst) + " over 95 points (tol 1e-9)"};
}

Outcome worst_case_gap() {
  const std::vector<double> grid = parse_grid("0.005:0.995:0.005");
  const SearchConfig cfg;  // defaults: 16 restarts for each k = 2..5
  const SweepResult result = sweep(grid, 5, cfg, threads());
  int min_restarts = 1 << 30;
  for (const GapSearch& p : result.points) min_restarts = std::min(min_restarts, p.diagnostics.restarts);
  const GapRecord& best = result.global_max();
  const double median = grid[grid.size() / 2];

  const std::string golden = cli::body(cli::slurp(std::string(RDGAP_FIXTURE_DIR) + "/gap_sweep_golden.csv"));
  const bool same = golden == sweep_csv(result);
  const bool pass = best.gap_bits > 0.0 && best.gap_bits < 0.11 && best.d_star < median &&
                    min_restarts >= 64 && same;
  return {pass, "max gap " + fmt("%.6f", best.gap_bits) + " bits at D* = " + fmt("%.3f", best.d_star) +
                    " (need 0 < gap < 0.11, D* < " + fmt("%.3f", median) + "), " +
                    std::to_string(min_restarts) + " restarts/point, golden fixture " +
                    (same ? "identical" : "DIFFERS")};
}

Outcome gap_nonnegative() {
  double worst = HUGE_VAL;
  const double d_values[] = {0.005, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9, 0.995};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Spectrum s = Spectrum::sample_random(1 + static_cast<int>(seed % 8), 10000 + seed);
    for (double d : d_values) worst = std::min(worst, gap_at(s, d).gap_bits);
  }
  return {worst >= -1e-9, "min gap " + fmt("%.3e", worst) + " over 1000 spectra x 10 D* (tol -1e-9)"};
}

Outcome gradients() {
  RandomStream rng(2024, StreamDomain::kSpectrumSample, 5);
  int instances = 0;
  double worst_rel = 0.0;
  for (std::uint64_t seed = 0; instances < 200 && seed < 5000; ++seed) {
    const Spectrum s = Spectrum::sample_random(2 + static_cast<int>(seed % 4), 20000 + seed);
    const double d = 0.02 + 0.95 * rng.uniform();
    bool positive = true;
    for (double v : s.values()) positive = positive && v > 1e-3;
    if (!positive) continue;
    RateGradients g;
    try {
      g = grad_rates(s, d, 1e-3);  // keep well clear of the water level
    } catch (const NumericError&) {
      continue;
    }
    ++instances;
    const std::vector<double>& v = s.values();
    for (std::size_t j = 0; j < v.size(); ++j) {
      const long double h = 1e-6L * v[j];
      std::vector<double> up = v, dn = v;
      up[j] = static_cast<double>(v[j] + h);
      dn[j] = static_cast<double>(v[j] - h);
      const long double step = static_cast<long double>(up[j]) - dn[j];
      const oracle::Levels a = oracle::of(up, s.weights()), b = oracle::of(dn, s.weights());
      const double fd_wf = static_cast<double>((oracle::rr_wf(a, d) - oracle::rr_wf(b, d)) / step);
      const double fd_rc = static_cast<double>((oracle::rr_rc(a, d) - oracle::rr_rc(b, d)) / step);
      worst_rel = std::max(worst_rel, std::abs(g.rate_wf[j] - fd_wf) / std::max(std::abs(fd_wf), 1e-3));
      worst_rel = std::max(worst_rel, std::abs(g.rate_rc[j] - fd_rc) / std::max(std::abs(fd_rc), 1e-3));
    }
  }

  // per-dimension dd_rc sensitivity by central differences at fixed rate
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Expansion e = expand_to_dimension(Spectrum::sample_random(2 + static_cast<int>(seed % 5), 30000 + seed), 16);
    const Levels coords = Levels::per_coordinate(e.eigenvalues);
    const double rate = 0.1 + 0.2 * static_cast<double>(seed % 20);
    const double T = t_rc_for_rate(coords, rate);
    for (std::size_t i = 0; i < e.eigenvalues.size(); i += 3) {
      const long double h = 1e-6L * (e.eigenvalues[i] + 1.0L / T);
      auto n_dd = [&](long double shift) {
        oracle::Levels o = oracle::of(e.eigenvalues, coords.weights);
        o.v[i] += shift;
        return 16 * oracle::dd_rc(o, rate);
      };
      const double fd = static_cast<double>((n_dd(h) - n_dd(-h)) / (2 * h));
      lo = std::min(lo, fd);
      hi = std::max(hi, fd);
    }
  }
  const bool pass = instances == 200 && worst_rel < 1e-5 && lo >= 0.0 && hi <= 2.0 + 1e-6;
  return {pass, std::to_string(instances) + " instances, max rel err " + fmt("%.2e", worst_rel) +
                    " (tol 1e-5); sensitivity range [" + fmt("%.6f", lo) + ", " + fmt("%.6f", hi) +
                    "] (need within [0, 2+1e-6])"};
}

Outcome exact_expectation() {
  std::vector<Spectrum> spectra = {Spectrum::flat(), Spectrum::semi_flat(0.25), Spectrum::semi_flat(0.5),
                                   Spectrum::from_levels(std::vector<double>{1.8, 0.2}, std::vector<double>{0.5, 0.5})};
  for (std::uint64_t seed = 0; spectra.size() < 20; ++seed) spectra.push_back(Spectrum::sample_random(2 + seed % 5, 40000 + seed));
  int ok = 0, total = 0;
  double worst_z = 0.0;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const Spectrum& s = spectra[i];
    const double t = s.max_value() * (0.05 + 0.9 * static_cast<double>(i) / 19.0);
    const double T = 0.1 * std::pow(10.0, 3.0 * static_cast<double>(i) / 19.0);
    const Rotation rot = i % 2 ? Rotation::kHaar : Rotation::kIdentity;
    const SimReport c = simulate_wf_coupling(s, t, 64, 5000, 100 + i, threads());
    const SimReport f = simulate_mmse_filter(s, T, 64, 5000, 200 + i, rot, threads());
    for (const SimReport* r : {&c, &f}) {
      const double z = std::abs(r->mean_distortion - r->analytic_target) / r->standard_error;
      worst_z = std::max(worst_z, z);
      ok += z <= 4.0;
      ++total;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                           " runs within 4 SE (20 coupling + 20 filter, n=64, 5000 trials), max |z| = " +
                           fmt("%.2f", worst_z)};
}

Outcome success_exponent() {
  SimConfig c;
  c.n = 10;
  c.rate_bits = 0.5;
  c.eta = 0.05;
  c.trials = 1000;
  c.w_batches = 1000;
  c.seed = 1;
  c.threads = threads();
  const SimReport r = estimate_codeword_success(c);
  const double e = r.exponent_bits.value_or(HUGE_VAL);
  return {r.draws >= 1000000 && std::abs(e - 0.5) <= 0.15,
          "exponent " + fmt("%.4f", e) + " from " + std::to_string(r.draws) + " draws (p = " +
              fmt("%.5f", r.p_hat) + "), need within 0.15 of 0.5"};
}

Outcome scheme_trend() {
  std::vector<double> excess;
  std::string detail;
  bool above = true;
  for (std::size_t n : {8u, 12u, 16u}) {
    SimConfig c;
    c.n = n;
    c.rate_bits = 1.0;
    c.trials = 4000;
    c.seed = 1;
    c.threads = threads();
    const SimReport r = run_universal_scheme(c);
    above = above && r.mean_distortion > 0.25;
    excess.push_back(r.mean_distortion - 0.25);
    detail += "n=" + std::to_string(n) + ": " + fmt("%.4f", r.mean_distortion) + " +- " +
              fmt("%.4f", r.standard_error) + "; ";
  }
  const bool decreasing = excess[0] > excess[1] && excess[1] > excess[2];
  return {above && decreasing, detail + "need > 0.25 with strictly decreasing excess"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(RDGAP_TEST_TMP) / "acceptance";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"wf", "wf --spectrum 3:0.2,0.5:0.8 --distortion-grid 0.05:0.95:0.05 --compare"},
      {"rdrc", "rdrc --spectrum semiflat:0.3 --rate-grid 0.25:4:0.25 --compare"},
      {"sweep", "gap-sweep --dstar-grid 0.05:0.45:0.1 --kmax 4"},
      {"scheme", "simulate --mode scheme --n 8 --rate 1 --trials 300 --rotation haar --spectrum 2:0.25,0.6666666666666666:0.75"},
      {"success", "simulate --mode success --n 8 --rate 0.5 --trials 2000 --w-batches 8"},
      {"coupling", "simulate --mode coupling --spectrum 1.8:0.5,0.2:0.5 --t 0.5 --n 64 --trials 500"},
      {"filter", "simulate --mode filter --spectrum 1.8:0.5,0.2:0.5 --T 2 --n 16 --trials 500 --rotation haar"},
  };
  int identical = 0;
  for (const auto& [tag, args] : commands) {
    std::vector<std::string> digests;
    int runs_ok = 0;
    for (const std::string env : {"RDGAP_THREADS=1", "RDGAP_THREADS=1", "RDGAP_THREADS=4"}) {
      const fs::path out = dir / (tag + "_" + std::to_string(digests.size()) + ".csv");
      const fs::path svg = dir / (tag + "_" + std::to_string(digests.size()) + ".svg");
      const bool plots = args.rfind("simulate", 0) != 0;
      const auto r = cli::run(args + " --out " + out.string() + (plots ? " --svg " + svg.string() : ""), env);
      runs_ok += r.status == 0;
      digests.push_back(sha256_hex(cli::slurp(out.string())) + (plots ? sha256_hex(cli::slurp(svg.string())) : ""));
    }
    if (runs_ok == 3 && digests[0] == digests[1] && digests[1] == digests[2]) ++identical;
  }
  const auto v1 = cli::run("version"), v2 = cli::run("version");
  const bool version_ok = v1.status == 0 && v1.out == v2.out && !v1.out.empty();
  const bool pass = identical == static_cast<int>(commands.size()) && version_ok;
  return {pass, std::to_string(identical) + "/" + std::to_string(commands.size()) +
                    " subcommand invocations byte-identical across 2 serial runs and 1 run with 4 threads" +
                    (version_ok ? ", version stable" : ", version output unstable")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Gaussian closed form", gaussian_closed_form},
      {"semi-flat equality", semi_flat_equality},
      {"worst-case gap below 0.11", worst_case_gap},
      {"gap nonnegativity", gap_nonnegative},
      {"gradient validation", gradients},
      {"exact-expectation simulations", exact_expectation},
      {"codeword success exponent", success_exponent},
      {"scheme trend in n", scheme_trend},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %zu %s: %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
