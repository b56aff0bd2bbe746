// rdgap: simulator.cpp
#include "rdgap/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "rdgap/errors.hpp"
#include "rdgap/random.hpp"
#include "rdgap/rdrc.hpp"
#include "rdgap/waterfill.hpp"

namespace rdgap {

using detail::require;

std::string to_string(Rotation r) { return r == Rotation::kHaar ? "haar" : "identity"; }

Rotation rotation_from_string(const std::string& name) {
  if (name == "identity") return Rotation::kIdentity;
  if (name == "haar") return Rotation::kHaar;
  throw InvalidArgument("rotation must be 'identity' or 'haar', got '" + name + "'");
}

std::size_t codebook_size(std::size_t n, double rate_bits) {
  const double m = std::floor(std::exp2(static_cast<double>(n) * rate_bits));
  if (!(m < 0x1.0p62)) return std::numeric_limits<std::size_t>::max();
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

Codebook::Codebook(std::size_t size, std::size_t n, std::uint64_t seed)
    : size_(size), n_(n), seed_(seed), data_(size * n) {
  for (std::size_t i = 0; i < size_; ++i) {
    RandomStream rng(seed_, StreamDomain::kCodebook, i);
    for (std::size_t d = 0; d < n_; ++d) data_[i * n_ + d] = rng.normal();
  }
}

void Codebook::rotate(const Eigen::MatrixXd& u) {
  require(static_cast<std::size_t>(u.rows()) == n_, "Codebook::rotate: dimension mismatch");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<RowMajor> rows(data_.data(), static_cast<Eigen::Index>(size_), static_cast<Eigen::Index>(n_));
  const RowMajor rotated = rows * u;
  rows = rotated;
}

Eigen::MatrixXd haar_orthogonal(std::size_t n, std::uint64_t seed) {
  require(n >= 1, "haar_orthogonal: n must be positive");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    RandomStream rng(seed, StreamDomain::kRotation, static_cast<std::uint64_t>(c));
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (packed(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t m) {
  require(m > 0, "wilson_interval: no draws");
  constexpr double z = 1.959963984540054;
  const double mm = static_cast<double>(m);
  const double p = static_cast<double>(k) / mm;
  const double denom = 1.0 + z * z / mm;
  const double center = (p + z * z / (2.0 * mm)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / mm + z * z / (4.0 * mm * mm)) / denom;
  const double low = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = k == m ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

namespace {

void summarize(SimReport& report, const std::vector<double>& values, bool keep) {
  const std::size_t m = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(m);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  report.trials = m;
  report.mean_distortion = mean;
  report.standard_error = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m)) : 0.0;
  if (keep) report.per_trial = values;
}

void fill_normals(RandomStream& rng, std::vector<double>& out) {
  for (double& v : out) v = rng.normal();
}

// W~ = U^T W, or W itself for the identity rotation.
void to_eigenbasis(const std::optional<Eigen::MatrixXd>& u, const std::vector<double>& w,
                   std::vector<double>& out) {
  if (!u) {
    out = w;
    return;
  }
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::Map<const Eigen::VectorXd> wv(w.data(), n);
  Eigen::Map<Eigen::VectorXd> ov(out.data(), n);
  ov.noalias() = u->transpose() * wv;
}

struct Prepared {
  Expansion expansion;
  Levels coords;
  double T = 0.0;
  std::optional<Eigen::MatrixXd> rotation;
};

Prepared prepare(const SimConfig& c) {
  require(c.n >= 1, "simulator: n must be positive");
  require(std::isfinite(c.rate_bits) && c.rate_bits > 0.0, "simulator: rate must be positive");
  require(c.trials >= 1, "simulator: at least one trial required");
  Prepared p;
  p.expansion = expand_to_dimension(c.spectrum, c.n);
  p.coords = Levels::per_coordinate(p.expansion.eigenvalues);
  p.T = t_rc_for_rate(p.coords, c.rate_bits);
  if (c.rotation == Rotation::kHaar) p.rotation = haar_orthogonal(c.n, c.seed);
  return p;
}

// Tau for one realization, honoring the threshold; checks 0 <= tau <= |W~|_inf.
double encoder_tau(const SimConfig& c, const Prepared& p, const std::vector<double>& w_sq,
                   double w_inf) {
  if (c.tau_threshold && w_inf > *c.tau_threshold) return 0.0;
  const double tau = tau_at(p.coords, w_sq, p.T);
  if (!(tau >= 0.0 && tau <= w_inf * (1.0 + 1e-12))) {
    throw NumericError("tau bound violated: tau = " + std::to_string(tau) +
                       ", max |W~| = " + std::to_string(w_inf));
  }
  return tau;
}

}  // namespace

SimReport run_universal_scheme(const SimConfig& c) {
  const std::size_t m = codebook_size(c.n, c.rate_bits);
  require(m <= c.codebook_cap, "simulator: codebook size 2^(n*rate) exceeds codebook_cap");
  const Prepared p = prepare(c);
  const std::vector<double>& lambda = p.expansion.eigenvalues;
  const std::size_t n = c.n;

  Codebook book(m, n, c.seed);
  if (p.rotation) book.rotate(*p.rotation);

  std::vector<double> distortion(c.trials), taus(c.trials);
  std::vector<char> fell_back(c.trials, 0);
  detail::parallel_for(c.trials, c.threads, [&](std::size_t trial) {
    RandomStream rng(c.seed, StreamDomain::kTrial, trial);
    std::vector<double> w(n), wt(n), w_sq(n);
    fill_normals(rng, w);
    to_eigenbasis(p.rotation, w, wt);
    double w_inf = 0.0, zero_dist = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      w_sq[d] = wt[d] * wt[d];
      w_inf = std::max(w_inf, std::abs(wt[d]));
      zero_dist += lambda[d] * w_sq[d];
    }
    const double tau = encoder_tau(c, p, w_sq, w_inf);

    double scale = tau;
    if (c.tau_delta) scale = w_inf > 0.0 ? quantize_tau(tau, w_inf, *c.tau_delta) : 0.0;

    // exact nearest scaled codeword; partial sums abort once they exceed the
    // incumbent, strict comparison keeps the lowest index on ties
    std::size_t best = 0;
    if (scale > 0.0) {
      double best_dist = HUGE_VAL;
      for (std::size_t i = 0; i < m; ++i) {
        const double* cw = book.codeword(i);
        double dist = 0.0;
        for (std::size_t d = 0; d < n && dist < best_dist; ++d) {
          const double e = wt[d] - scale * cw[d];
          dist += lambda[d] * e * e;
        }
        if (dist < best_dist) {
          best_dist = dist;
          best = i;
        }
      }
    }

    const double* cw = book.codeword(best);
    double dist = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      const double e = wt[d] - scale * cw[d];
      dist += lambda[d] * e * e;
    }
    if (c.tau_threshold && zero_dist < dist) {
      dist = zero_dist;
      fell_back[trial] = 1;
    }
    distortion[trial] = dist / static_cast<double>(n);
    taus[trial] = tau;
  });

  SimReport report;
  report.mode = "scheme";
  report.warnings = p.expansion.warnings;
  summarize(report, distortion, c.keep_trials);
  report.analytic_target = dd_rc(p.coords, c.rate_bits);
  report.codebook_size = m;
  double tau_sum = 0.0;
  for (double t : taus) tau_sum += t;
  report.mean_tau = tau_sum / static_cast<double>(c.trials);
  for (char f : fell_back) report.zero_fallbacks += static_cast<std::size_t>(f);
  return report;
}

SimReport estimate_codeword_success(const SimConfig& c) {
  require(c.eta > 0.0, "success mode: eta must be positive");
  require(static_cast<double>(c.n) * c.rate_bits <= 26.0,
          "success mode: n * rate must be at most 26 for direct sampling");
  require(c.w_batches >= 1, "success mode: at least one W batch required");
  const Prepared p = prepare(c);
  const std::vector<double>& lambda = p.expansion.eigenvalues;
  const std::size_t n = c.n;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<std::uint64_t> hits(c.w_batches);
  std::vector<double> batch_mean(c.w_batches);
  detail::parallel_for(c.w_batches, c.threads, [&](std::size_t batch) {
    RandomStream wrng(c.seed, StreamDomain::kTrial, batch);
    std::vector<double> w(n), wt(n), w_sq(n), code(n), code_t(n);
    fill_normals(wrng, w);
    to_eigenbasis(p.rotation, w, wt);
    double w_inf = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      w_sq[d] = wt[d] * wt[d];
      w_inf = std::max(w_inf, std::abs(wt[d]));
    }
    const double tau = encoder_tau(c, p, w_sq, w_inf);
    const double target = d_rc_per_w(p.coords, w_sq, p.T) + c.eta;

    RandomStream crng(c.seed, StreamDomain::kSuccessCodeword, batch);
    std::uint64_t k = 0;
    double sum = 0.0;
    for (std::size_t draw = 0; draw < c.trials; ++draw) {
      fill_normals(crng, code);
      to_eigenbasis(p.rotation, code, code_t);
      double dist = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        const double e = wt[d] - tau * code_t[d];
        dist += lambda[d] * e * e;
      }
      dist *= inv_n;
      sum += dist;
      if (dist <= target) ++k;
    }
    hits[batch] = k;
    batch_mean[batch] = sum / static_cast<double>(c.trials);
  });

  SimReport report;
  report.mode = "success";
  report.warnings = p.expansion.warnings;
  summarize(report, batch_mean, c.keep_trials);
  report.trials = c.trials;
  report.analytic_target = dd_rc(p.coords, c.rate_bits);
  for (std::uint64_t h : hits) report.successes += h;
  report.draws = static_cast<std::uint64_t>(c.trials) * c.w_batches;
  report.p_hat = static_cast<double>(report.successes) / static_cast<double>(report.draws);
  std::tie(report.wilson_low, report.wilson_high) = wilson_interval(report.successes, report.draws);
  if (report.successes > 0) report.exponent_bits = -std::log2(report.p_hat) * inv_n;
  report.exponent_lower_bound = -std::log2(report.wilson_high) * inv_n;
  return report;
}

SimReport simulate_wf_coupling(const Spectrum& s, double t, std::size_t n, std::size_t trials,
                               std::uint64_t seed, unsigned threads) {
  require(t > 0.0, "coupling: water level must be positive");
  require(n >= 1 && trials >= 1, "coupling: n and trials must be positive");
  const Expansion e = expand_to_dimension(s, n);
  const std::vector<double>& lambda = e.eigenvalues;
  const Levels coords = Levels::per_coordinate(lambda);
  const std::vector<double> dist_i = per_coord_distortions(coords, t);

  std::vector<double> out(trials);
  detail::parallel_for(trials, threads, [&](std::size_t trial) {
    RandomStream rng(seed, StreamDomain::kTrial, trial);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = std::sqrt(1.0 - dist_i[i]) * rng.normal();
      const double z = rng.normal();
      const double w = y + std::sqrt(dist_i[i]) * z;
      acc += lambda[i] * (w - y) * (w - y);
    }
    out[trial] = acc / static_cast<double>(n);
  });

  SimReport report;
  report.mode = "coupling";
  report.warnings = e.warnings;
  summarize(report, out, false);
  report.analytic_target = d_wf(coords, t);
  return report;
}

SimReport simulate_mmse_filter(const Spectrum& s, double T, std::size_t n, std::size_t trials,
                               std::uint64_t seed, Rotation rotation, unsigned threads) {
  require(T > 0.0, "filter: T must be positive");
  require(n >= 1 && trials >= 1, "filter: n and trials must be positive");
  const Expansion e = expand_to_dimension(s, n);
  const std::vector<double>& lambda = e.eigenvalues;
  const Levels coords = Levels::per_coordinate(lambda);
  const auto dim = static_cast<Eigen::Index>(n);

  Eigen::VectorXd gain(dim), sd(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    gain(i) = lambda[i] * T / (1.0 + lambda[i] * T);
    sd(i) = std::sqrt(lambda[i]);
  }
  std::optional<Eigen::MatrixXd> u;
  if (rotation == Rotation::kHaar) u = haar_orthogonal(n, seed);
  const double noise_sd = 1.0 / std::sqrt(T);

  std::vector<double> out(trials);
  detail::parallel_for(trials, threads, [&](std::size_t trial) {
    RandomStream rng(seed, StreamDomain::kTrial, trial);
    Eigen::VectorXd x(dim), z(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = sd(i) * rng.normal();
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = noise_sd * rng.normal();
    double err = 0.0;
    if (u) {
      const Eigen::VectorXd xs = *u * x;                  // X = U Lambda^(1/2) G
      const Eigen::VectorXd y = xs + z;                   // observation X + Z
      const Eigen::VectorXd yt = u->transpose() * y;
      const Eigen::VectorXd xhat = *u * gain.cwiseProduct(yt);
      err = (xhat - xs).squaredNorm();
    } else {
      err = (gain.cwiseProduct(x + z) - x).squaredNorm();
    }
    out[trial] = err / static_cast<double>(n);
  });

  SimReport report;
  report.mode = "filter";
  report.warnings = e.warnings;
  summarize(report, out, false);
  report.analytic_target = d_rc(coords, T);
  return report;
}

}  // namespace rdgap
