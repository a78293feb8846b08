#include "caresim/imputation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caresim/errors.hpp"

namespace caresim {

namespace {

double kernel_value(const GpKernel& k, double t1, double t2) {
    const double d = t1 - t2;
    return k.signal_variance * std::exp(-d * d / (2.0 * k.length_scale * k.length_scale));
}

void check_hyperparameters(const GpKernel& kernel, double noise_variance) {
    if (!(kernel.length_scale > 0.0)) {
        throw std::invalid_argument("fit_gp: length_scale must be positive");
    }
    if (!(kernel.signal_variance > 0.0)) {
        throw std::invalid_argument("fit_gp: signal_variance must be positive");
    }
    if (noise_variance < 0.0) {
        throw std::invalid_argument("fit_gp: noise_variance must be nonnegative");
    }
}

struct Gap {
    std::size_t begin;  // first missing index
    std::size_t end;    // one past the last missing index
    std::size_t length() const { return end - begin; }
};

std::vector<Gap> find_gaps(const TimeSeries& series) {
    std::vector<Gap> gaps;
    std::size_t i = 0;
    while (i < series.values.size()) {
        if (!series.values[i].has_value()) {
            std::size_t j = i;
            while (j < series.values.size() && !series.values[j].has_value()) {
                ++j;
            }
            gaps.push_back({i, j});
            i = j;
        } else {
            ++i;
        }
    }
    return gaps;
}

}  // namespace

GPModel fit_gp(const TimeSeries& observed, const GpKernel& kernel, double noise_variance) {
    check_hyperparameters(kernel, noise_variance);

    std::vector<double> times;
    std::vector<double> targets;
    times.reserve(observed.size());
    targets.reserve(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (observed.values[i].has_value()) {
            times.push_back(observed.times[i]);
            targets.push_back(*observed.values[i]);
        }
    }
    if (times.empty()) {
        throw std::invalid_argument("fit_gp: series has no observed values");
    }

    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = kernel_value(kernel, times[i], times[j]);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    }

    // First attempt without jitter so noise-free fits reproduce exactly;
    // the ladder engages only when the factorization fails.
    const double base_jitter = 1e-9 * kernel.signal_variance;
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt <= 7; ++attempt) {
        Eigen::MatrixXd k = cov;
        k.diagonal().array() += noise_variance + jitter;
        llt.compute(k);
        if (llt.info() == Eigen::Success) {
            ok = true;
            break;
        }
        jitter = jitter == 0.0 ? base_jitter : 2.0 * jitter;
    }
    if (!ok) {
        throw NumericalError("fit_gp: covariance factorization failed after jitter ladder");
    }

    GPModel model;
    model.kernel_ = kernel;
    model.noise_variance_ = noise_variance;
    model.jitter_used_ = jitter;
    model.train_times_ = std::move(times);

    const Eigen::Map<const Eigen::VectorXd> y(targets.data(), n);
    const Eigen::VectorXd alpha = llt.solve(y);
    model.alpha_.assign(alpha.data(), alpha.data() + n);

    const Eigen::MatrixXd lower = llt.matrixL();
    model.chol_lower_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            model.chol_lower_[static_cast<std::size_t>(i * n + j)] = lower(i, j);
        }
    }
    return model;
}

std::vector<GpPrediction> GPModel::predict(const std::vector<double>& query_times) const {
    const std::size_t n = train_times_.size();
    std::vector<GpPrediction> out(query_times.size());
    std::vector<double> k_star(n);
    std::vector<double> v(n);

    for (std::size_t q = 0; q < query_times.size(); ++q) {
        const double t = query_times[q];
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            k_star[i] = kernel_value(kernel_, t, train_times_[i]);
            mean += k_star[i] * alpha_[i];
        }

        // Forward-substitute L v = k_star, then var = k** - v.v.
        double quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = k_star[i];
            const double* row = &chol_lower_[i * n];
            for (std::size_t j = 0; j < i; ++j) {
                sum -= row[j] * v[j];
            }
            v[i] = sum / row[i];
            quad += v[i] * v[i];
        }

        out[q].mean = mean;
        out[q].variance = std::max(0.0, kernel_.signal_variance - quad);
    }
    return out;
}

std::vector<GpPrediction> predict(const GPModel& model, const std::vector<double>& query_times) {
    return model.predict(query_times);
}

TimeSeries fill_gaps(const TimeSeries& series, const GapPolicy& policy,
                     std::optional<GpKernel> kernel, std::optional<double> noise_variance) {
    if (policy.short_gap_max < 1) {
        throw std::invalid_argument("fill_gaps: short_gap_max must be at least 1");
    }
    for (std::size_t i = 1; i < series.times.size(); ++i) {
        if (!(series.times[i] > series.times[i - 1])) {
            throw std::invalid_argument("fill_gaps: times must be strictly increasing");
        }
    }

    TimeSeries out = series;
    const auto gaps = find_gaps(series);
    if (gaps.empty()) {
        return out;
    }

    std::vector<double> observed;
    for (const auto& v : series.values) {
        if (v.has_value()) {
            observed.push_back(*v);
        }
    }
    if (observed.empty()) {
        throw std::invalid_argument("fill_gaps: series has no observed values");
    }

    double observed_mean = 0.0;
    for (double y : observed) {
        observed_mean += y;
    }
    observed_mean /= static_cast<double>(observed.size());

    const bool any_short = std::any_of(gaps.begin(), gaps.end(), [&](const Gap& g) {
        return g.length() <= static_cast<std::size_t>(policy.short_gap_max);
    });

    GPModel model;
    bool model_ready = false;
    if (any_short) {
        if (observed.size() < 2) {
            throw std::invalid_argument(
                "fill_gaps: at least two observed values required for interpolation");
        }
        GpKernel k;
        if (kernel.has_value()) {
            k = *kernel;
        } else {
            const double dt = series.times.size() > 1 ? series.times[1] - series.times[0] : 1.0;
            double var = 0.0;
            for (double y : observed) {
                var += (y - observed_mean) * (y - observed_mean);
            }
            var /= static_cast<double>(observed.size());
            k.length_scale = 3.0 * dt;
            k.signal_variance = std::max(var, 1e-12);
        }
        const double noise = noise_variance.value_or(1e-6 * k.signal_variance);

        // Mean-centered fit: the GP sees zero-mean targets and the mean is
        // restored on the filled values.
        TimeSeries centered = series;
        for (auto& v : centered.values) {
            if (v.has_value()) {
                v = *v - observed_mean;
            }
        }
        model = fit_gp(centered, k, noise);
        model_ready = true;
    }

    for (const auto& gap : gaps) {
        if (gap.length() <= static_cast<std::size_t>(policy.short_gap_max)) {
            std::vector<double> query(series.times.begin() + static_cast<std::ptrdiff_t>(gap.begin),
                                      series.times.begin() + static_cast<std::ptrdiff_t>(gap.end));
            const auto preds = model.predict(query);
            (void)model_ready;
            for (std::size_t i = 0; i < preds.size(); ++i) {
                out.values[gap.begin + i] = preds[i].mean + observed_mean;
            }
        } else {
            switch (policy.long_gap_fill) {
                case LongGapFill::HoldLast: {
                    std::optional<double> fill;
                    if (gap.begin > 0) {
                        fill = out.values[gap.begin - 1];
                    } else {
                        // Leading gap: backfill from the first observation.
                        for (std::size_t i = gap.end; i < out.values.size(); ++i) {
                            if (out.values[i].has_value()) {
                                fill = out.values[i];
                                break;
                            }
                        }
                    }
                    for (std::size_t i = gap.begin; i < gap.end; ++i) {
                        out.values[i] = fill;
                    }
                    break;
                }
                case LongGapFill::SeriesMean:
                    for (std::size_t i = gap.begin; i < gap.end; ++i) {
                        out.values[i] = observed_mean;
                    }
                    break;
                case LongGapFill::LeaveMissing:
                    break;
            }
        }
    }
    return out;
}

}  // namespace caresim
