#pragma once

#include "irsa/decoder.hpp"
#include "irsa/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace irsa {

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

struct TrialMetrics {
    int decoded = 0;
    double throughput = 0.0;       // T = |D| / M
    double decoded_fraction = 0.0; // |D| / K
    double sum_rate = 0.0;         // S, bits per frame
    double sum_rate_max = 0.0;     // sum of genie rates over D
    double c_ref = 0.0;            // coordinated reference capacity, bits per frame
    double eta = 0.0;
    double eta_max = 0.0;
    double gamma = 0.0;            // S / M, bits per slot
    double gamma_max = 0.0;
    double mean_rate = 0.0;        // assigned rate averaged over all K users
    double energy_per_user = 0.0;  // mean_i l_i E_s^i / N0, linear
    double energy_per_user_db = 0.0;

    bool operator==(const TrialMetrics&) const = default;
};

/// (L M / 2) log2(1 + K l_avg E_s / (M N0)); K l_avg E_s / M is K tilde_E_s.
double c_ref(const ChannelConfig& cfg, double l_avg, double es);

TrialMetrics trial_metrics(const DecodeResult& result, const TransmitProfile& profile,
                           const FrameGraph& graph, const ChannelConfig& cfg);

/// Average PA energy per user over N0 (linear):
///   mu (hat_E_s/N0) ((r_avg - 1) bar_E_s + N0) / N0
///   = mu (hat_E_s/N0) l_avg / ((1 - r_avg) hat_E_s/N0 + l_avg)
/// Throws InfeasibleOperatingPoint when the PA energy equation has no positive solution.
double gamma_pa_analytic(double mu, double hat_es, double n0, double l_avg, double r_avg);

struct ReferenceEnergies {
    double gamma_irsa; // l_avg hat_E_s / N0
    double gamma_min;  // hat_E_s / N0
};
ReferenceEnergies gamma_irsa_min(double hat_es, double n0, double l_avg);

/// Jensen upper bound on the mean RS rate: rate_rs evaluated at l_avg.
double jensen_bound_rs(double es, double n0, int channel_uses, double alpha, double beta,
                       double l_avg, double r_avg);

/// Count, mean and standard error. Sums are accumulated in insertion order,
/// so callers that need reproducible output add samples in a fixed order.
class RunningStats {
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    void merge(const RunningStats& other)
    {
        if (other.n_ == 0)
            return;
        if (n_ == 0) {
            *this = other;
            return;
        }
        const double n = static_cast<double>(n_ + other.n_);
        const double d = other.mean_ - mean_;
        mean_ += d * static_cast<double>(other.n_) / n;
        m2_ += other.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(other.n_) / n;
        n_ += other.n_;
    }
    std::int64_t count() const { return n_; }
    double mean() const { return n_ ? mean_ : std::numeric_limits<double>::quiet_NaN(); }
    /// NaN with fewer than two samples.
    double standard_error() const
    {
        if (n_ < 2)
            return std::numeric_limits<double>::quiet_NaN();
        const double var = std::max(0.0, m2_ / static_cast<double>(n_ - 1));
        return std::sqrt(var / static_cast<double>(n_));
    }

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

} // namespace irsa
