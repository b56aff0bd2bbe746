// rdgap: spectrum.hpp
// Eigenvalue spectra normalized to unit mean eigenvalue.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rdgap {

/// Non-owning (value, weight) view used by all curve evaluators.
///
/// Unlike Spectrum, a view carries no invariants beyond equal lengths; the
/// optimizer and finite-difference checks evaluate the curves on raw,
/// unnormalized levels through it.
struct LevelView {
  std::span<const double> values;
  std::span<const double> weights;

  std::size_t size() const { return values.size(); }
  double mean() const;
  double max_value() const;
};

/// Owning level set without invariants; handy for per-coordinate views
/// (weight 1/n on every coordinate) and perturbed copies.
struct Levels {
  std::vector<double> values;
  std::vector<double> weights;

  static Levels per_coordinate(std::span<const double> eigenvalues);

  LevelView view() const { return {values, weights}; }
  operator LevelView() const { return view(); }  // NOLINT(google-explicit-constructor)
};

/// Distinct eigenvalue levels (strictly decreasing, nonnegative) with the
/// fraction of dimensions at each level. Weights sum to one and the
/// weighted mean of the values is one.
class Spectrum {
 public:
  /// Canonicalizes a raw eigenvalue vector: scale to unit mean, merge
  /// exactly equal entries, sort decreasing.
  static Spectrum from_eigenvalues(std::span<const double> raw);

  /// Canonicalizes arbitrary (value, weight) pairs. Weights are normalized
  /// to sum to one, then values are scaled to unit mean. Zero-weight levels
  /// are dropped.
  static Spectrum from_levels(std::span<const double> values,
                              std::span<const double> weights);

  static Spectrum flat();

  /// One level 1/f on a fraction f of the dimensions, zero elsewhere.
  static Spectrum semi_flat(double active_fraction);

  /// Random valid spectrum with at most k levels, deterministic in seed.
  static Spectrum sample_random(int k, std::uint64_t seed);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  double max_value() const { return values_.front(); }

  LevelView view() const { return {values_, weights_}; }
  operator LevelView() const { return view(); }  // NOLINT(google-explicit-constructor)

  /// Short literal form `v1:w1,v2:w2`, 17 significant digits.
  std::string to_literal() const;

  bool operator==(const Spectrum&) const = default;

 private:
  Spectrum(std::vector<double> values, std::vector<double> weights)
      : values_(std::move(values)), weights_(std::move(weights)) {}

  std::vector<double> values_;
  std::vector<double> weights_;
};

/// Merges levels lying within `tol` of a cluster's largest value into their
/// weight-averaged value and renormalizes. tol = 0 is the identity.
Spectrum merge_close(const Spectrum& s, double tol);

/// Throws InvalidArgument unless every Spectrum invariant holds for the
/// given (values, weights); used by tests and by deserialization.
void check_spectrum_invariants(std::span<const double> values,
                               std::span<const double> weights);

/// Result of distributing a spectrum over n integer dimensions.
struct Expansion {
  std::vector<double> eigenvalues;    // length n, decreasing, mean one
  std::vector<std::size_t> counts;    // dimensions per original level
  std::vector<std::string> warnings;  // one per dropped level
};

/// Largest-remainder apportionment of weight_j * n dimensions per level
/// (ties go to the lower level index). Levels that receive no dimension are
/// dropped with a warning and the result is rescaled to unit mean.
Expansion expand_to_dimension(const Spectrum& s, std::size_t n);

}  // namespace rdgap
