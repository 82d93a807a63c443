#include "sbmtest/lda.hpp"

#include <numeric>
#include <vector>

#include "sbmtest/error.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

bool LdaThreshold::rejects(double value) const {
  if (degenerate) return false;
  return orientation > 0 ? value > threshold : value < threshold;
}

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double squares_about(std::span<const double> v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

}  // namespace

LdaThreshold fit_lda_threshold(std::span<const double> null_values,
                               std::span<const double> alt_values) {
  if (null_values.empty() || alt_values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "fit_lda_threshold: both classes need samples");
  }
  LdaThreshold fit;
  fit.null_mean = mean_of(null_values);
  fit.alt_mean = mean_of(alt_values);
  const double dof = static_cast<double>(null_values.size() + alt_values.size()) - 2.0;
  const double ss = squares_about(null_values, fit.null_mean) + squares_about(alt_values, fit.alt_mean);
  fit.pooled_variance = dof > 0 ? ss / dof : 0.0;
  if (fit.null_mean == fit.alt_mean) {
    if (fit.pooled_variance == 0.0) {
      throw Error(ErrorCode::Degenerate,
                  "fit_lda_threshold: equal class means with zero pooled variance");
    }
    fit.degenerate = true;
    fit.threshold = fit.null_mean;
    fit.training_error = 0.5;
    return fit;
  }
  // Equal priors and a shared variance put the boundary at the midpoint.
  fit.threshold = 0.5 * (fit.null_mean + fit.alt_mean);
  fit.orientation = fit.alt_mean > fit.null_mean ? 1 : -1;
  std::size_t fa = 0;
  std::size_t md = 0;
  for (double v : null_values) fa += fit.rejects(v);
  for (double v : alt_values) md += !fit.rejects(v);
  fit.training_error = 0.5 * (static_cast<double>(fa) / static_cast<double>(null_values.size()) +
                              static_cast<double>(md) / static_cast<double>(alt_values.size()));
  return fit;
}

CvRisk cross_validated_risk(std::span<const double> null_values, std::span<const double> alt_values,
                            std::size_t folds, std::size_t repeats, std::uint64_t seed) {
  if (folds < 2 || repeats < 1) {
    throw Error(ErrorCode::InvalidArgument, "cross_validated_risk: need folds >= 2, repeats >= 1");
  }
  if (null_values.size() < folds || alt_values.size() < folds) {
    throw Error(ErrorCode::InvalidArgument,
                "cross_validated_risk: each class needs at least `folds` samples");
  }
  Rng rng(seed);
  auto shuffled_folds = [&](std::size_t count) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = count; i > 1; --i) {
      std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.below(i))]);
    }
    std::vector<std::size_t> fold_of(count);
    for (std::size_t pos = 0; pos < count; ++pos) fold_of[idx[pos]] = pos % folds;
    return fold_of;
  };

  CvRisk total;
  std::vector<double> train_null;
  std::vector<double> train_alt;
  for (std::size_t r = 0; r < repeats; ++r) {
    const std::vector<std::size_t> fold_null = shuffled_folds(null_values.size());
    const std::vector<std::size_t> fold_alt = shuffled_folds(alt_values.size());
    for (std::size_t f = 0; f < folds; ++f) {
      train_null.clear();
      train_alt.clear();
      for (std::size_t i = 0; i < null_values.size(); ++i) {
        if (fold_null[i] != f) train_null.push_back(null_values[i]);
      }
      for (std::size_t i = 0; i < alt_values.size(); ++i) {
        if (fold_alt[i] != f) train_alt.push_back(alt_values[i]);
      }
      const LdaThreshold fit = fit_lda_threshold(train_null, train_alt);
      std::size_t fa = 0, nt = 0, md = 0, at = 0;
      for (std::size_t i = 0; i < null_values.size(); ++i) {
        if (fold_null[i] != f) continue;
        ++nt;
        fa += fit.rejects(null_values[i]);
      }
      for (std::size_t i = 0; i < alt_values.size(); ++i) {
        if (fold_alt[i] != f) continue;
        ++at;
        md += !fit.rejects(alt_values[i]);
      }
      total.fa += static_cast<double>(fa) / static_cast<double>(nt);
      total.md += static_cast<double>(md) / static_cast<double>(at);
    }
  }
  const double count = static_cast<double>(folds * repeats);
  total.fa /= count;
  total.md /= count;
  total.risk = total.fa + total.md;
  return total;
}

}  // namespace sbmtest
