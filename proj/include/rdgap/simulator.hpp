// rdgap: simulator.hpp
// Monte-Carlo validation of the universal Gaussian-codebook quantizer and of
// the two exact-expectation constructions (waterfilling test channel and
// noise-plus-MMSE filter).
//
// Reproducibility: every random draw comes from a RandomStream keyed by
// (config.seed, domain) with the trial / codeword / batch index as stream
// number, so serial and parallel runs produce bit-identical reports.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdgap/spectrum.hpp"

namespace rdgap {

enum class Rotation { kIdentity, kHaar };

std::string to_string(Rotation r);
Rotation rotation_from_string(const std::string& name);

struct SimConfig {
  std::size_t n = 8;
  double rate_bits = 1.0;
  Spectrum spectrum = Spectrum::flat();
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  Rotation rotation = Rotation::kIdentity;
  std::optional<double> tau_delta;      // enables q(tau)
  std::optional<double> tau_threshold;  // tau = 0 above it; also admits the zero reconstruction
  std::size_t codebook_cap = std::size_t{1} << 22;
  double eta = 0.05;                    // success-mode slack
  std::size_t w_batches = 1;            // success mode: W realizations
  bool keep_trials = false;
  unsigned threads = 1;
};

/// floor(2^(n * rate)) clamped below at 1.
std::size_t codebook_size(std::size_t n, double rate_bits);

/// M iid N(0, I_n) codewords; codeword i is stream i of the codebook domain.
class Codebook {
 public:
  Codebook(std::size_t size, std::size_t n, std::uint64_t seed);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  const double* codeword(std::size_t i) const { return data_.data() + i * n_; }
  const std::vector<double>& data() const { return data_; }

  /// Rows replaced by (U^T c_i)^T.
  void rotate(const Eigen::MatrixXd& u);

 private:
  std::size_t size_, n_;
  std::uint64_t seed_;
  std::vector<double> data_;  // row-major, size_ x n_
};

struct SimReport {
  std::string mode;
  std::size_t trials = 0;
  double mean_distortion = 0.0;
  double standard_error = 0.0;
  double analytic_target = 0.0;
  std::vector<double> per_trial;  // filled when keep_trials
  std::vector<std::string> warnings;

  // scheme mode
  std::size_t codebook_size = 0;
  double mean_tau = 0.0;
  std::size_t zero_fallbacks = 0;

  // success mode
  std::uint64_t successes = 0;
  std::uint64_t draws = 0;
  double p_hat = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::optional<double> exponent_bits;  // -(1/n) log2 p_hat, absent when p_hat = 0
  double exponent_lower_bound = 0.0;    // -(1/n) log2 wilson_high
};

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// column signs fixed so that R has a positive diagonal.
Eigen::MatrixXd haar_orthogonal(std::size_t n, std::uint64_t seed);

/// End-to-end scheme: W ~ N(0, I_n), W~ = U^T W, tau at the configured rate,
/// nearest scaled codeword under d_Sigma (lowest index on ties), distortion
/// (1/n)(W - q(tau) c)^T Sigma (W - q(tau) c). Target: dd_rc at the rate.
SimReport run_universal_scheme(const SimConfig& config);

/// Single-codeword success probability
///   p_n = Pr_c[(1/n) d_Sigma(W, tau c) <= D_rc(W~, rate) + eta],
/// `trials` codewords per W batch, pooled over `w_batches` batches.
SimReport estimate_codeword_success(const SimConfig& config);

/// Waterfilling test channel W_i = Y_i + sqrt(D_i) Z_i; measures
/// (1/n) sum lambda_i (W_i - Y_i)^2. Target: d_wf(t).
SimReport simulate_wf_coupling(const Spectrum& s, double t, std::size_t n, std::size_t trials,
                               std::uint64_t seed, unsigned threads = 1);

/// X ~ N(0, Sigma), Z ~ N(0, I/T), Xhat = F (X + Z) with F the MMSE filter;
/// measures (1/n)||Xhat - X||^2. Target: d_rc(T).
SimReport simulate_mmse_filter(const Spectrum& s, double T, std::size_t n, std::size_t trials,
                               std::uint64_t seed, Rotation rotation = Rotation::kIdentity,
                               unsigned threads = 1);

/// 95% Wilson score interval for k successes in m draws.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t m);

}  // namespace rdgap
