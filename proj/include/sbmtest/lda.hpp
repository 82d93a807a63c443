#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace sbmtest {

// One-dimensional linear discriminant with equal priors and pooled variance.
struct LdaThreshold {
  double threshold = 0.0;
  int orientation = 1;  // +1: reject above threshold, -1: reject below
  bool degenerate = false;  // equal class means; never rejects
  double null_mean = 0.0;
  double alt_mean = 0.0;
  double pooled_variance = 0.0;
  double training_error = 0.0;  // (FA + MD) / 2 on the fitted data; 0.5 if degenerate

  bool rejects(double value) const;
};

LdaThreshold fit_lda_threshold(std::span<const double> null_values,
                               std::span<const double> alt_values);

struct CvRisk {
  double risk = 0.0;  // mean over folds of FA + MD
  double fa = 0.0;
  double md = 0.0;
};

// Stratified k-fold cross-validation, repeated with fresh shuffles.
CvRisk cross_validated_risk(std::span<const double> null_values,
                            std::span<const double> alt_values, std::size_t folds,
                            std::size_t repeats, std::uint64_t seed);

}  // namespace sbmtest
