#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "caresim/timeseries.hpp"

namespace caresim {

/// Squared-exponential kernel k(t, t') = signal_variance *
/// exp(-(t - t')^2 / (2 * length_scale^2)).
struct GpKernel {
    double length_scale = 1.0;    // > 0
    double signal_variance = 1.0; // > 0
};

struct GpPrediction {
    double mean = 0.0;
    double variance = 0.0;
};

/// Zero-mean Gaussian-process regressor fitted on the observed samples of a
/// series. Immutable once fitted; safe to share across threads.
class GPModel {
public:
    /// Posterior mean and variance at each query time. The variance is the
    /// latent-function variance, floored at zero against roundoff.
    std::vector<GpPrediction> predict(const std::vector<double>& query_times) const;

    const GpKernel& kernel() const { return kernel_; }
    double noise_variance() const { return noise_variance_; }
    std::size_t training_size() const { return train_times_.size(); }
    double jitter_used() const { return jitter_used_; }

private:
    friend GPModel fit_gp(const TimeSeries&, const GpKernel&, double);

    std::vector<double> train_times_;
    std::vector<double> chol_lower_;  // row-major packed lower-triangular factor
    std::vector<double> alpha_;       // K^{-1} y
    GpKernel kernel_;
    double noise_variance_ = 0.0;
    double jitter_used_ = 0.0;
};

/// Fits the zero-mean GP on the non-missing samples. The covariance is
/// factorized by Cholesky; if that fails, jitter of 1e-9 * signal_variance
/// is added to the diagonal and doubled up to six times before giving up
/// with NumericalError. Throws std::invalid_argument for an all-missing
/// series or non-positive hyperparameters.
GPModel fit_gp(const TimeSeries& observed, const GpKernel& kernel, double noise_variance);

/// Free-function form of GPModel::predict.
std::vector<GpPrediction> predict(const GPModel& model, const std::vector<double>& query_times);

enum class LongGapFill { HoldLast, SeriesMean, LeaveMissing };

/// Runs of consecutive missing samples up to short_gap_max long are filled
/// by the GP posterior mean; longer runs follow long_gap_fill.
struct GapPolicy {
    int short_gap_max = 5;  // >= 1
    LongGapFill long_gap_fill = LongGapFill::HoldLast;
};

/// Fills missing samples according to the policy. Non-missing samples are
/// returned bit-identical. Short gaps use a single GP fitted on all
/// observed samples; the observed values are mean-centered for the fit and
/// the mean is restored on the filled values, so constant series fill
/// exactly and a constant offset moves fills by exactly that offset.
///
/// Kernel defaults when not supplied: length_scale = 3 * grid spacing,
/// signal_variance = population variance of the observed values (floored at
/// 1e-12), noise_variance = 1e-6 * signal_variance.
///
/// Long-gap semantics: hold-last repeats the closest preceding observation
/// (a gap at the very start backfills from the first observation);
/// series-mean uses the mean of all observed values; leave-missing keeps
/// the markers.
TimeSeries fill_gaps(const TimeSeries& series, const GapPolicy& policy,
                     std::optional<GpKernel> kernel = std::nullopt,
                     std::optional<double> noise_variance = std::nullopt);

}  // namespace caresim
