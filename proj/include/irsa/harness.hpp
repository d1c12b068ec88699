#pragma once

#include "irsa/distributions.hpp"
#include "irsa/metrics.hpp"
#include "irsa/schemes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irsa {

/// Named distribution family plus its parameter. For the ideal soliton an
/// absent Y means "Y = M" at every sweep point.
struct DistributionSpec {
    std::string name = "modified_soliton"; // ideal_soliton | modified_soliton | l3
    std::optional<int> y = 10;

    /// Throws InvalidParameter for unknown names or bad Y.
    void validate() const;
    DegreeDistribution make(int slots) const;
    /// Filesystem-safe label, e.g. "modified_soliton_Y10", "ideal_soliton_YM", "l3".
    std::string label() const;

    bool operator==(const DistributionSpec&) const = default;
};

struct SweepSpec {
    SchemeConfig scheme;
    DistributionSpec distribution;
    int messages = 300;
    std::vector<double> loads{0.8}; // G grid; M = round(K / G) at each point
    int trials = 1000;
    std::uint64_t seed = 0;
    int channel_uses = 100;
    double n0 = 1.0;
    std::optional<double> tilde_es_over_n0;
    std::optional<double> es_over_n0;
    std::optional<double> hat_rate_bits;
    int threads = 0; // 0: one per hardware thread

    bool operator==(const SweepSpec&) const = default;
};

int slots_for_load(int messages, double load);

/// One G point of a sweep with everything resolved.
struct SweepPoint {
    std::size_t index = 0;
    double load = 0.0;
    ChannelConfig channel;
    SchemeConfig scheme;
    DegreeDistribution dist = fixed_l3();
    double l_avg = 0.0;
    double r_avg = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    int threads = 0;
};

/// Throws ConfigurationError when M < max degree or the load is not positive.
SweepPoint make_point(const SweepSpec& spec, std::size_t index);

/// Deterministic in (point.seed, point.index, trial); see trial_seed().
TrialMetrics run_trial(const SweepPoint& point, int trial);

struct PointStats {
    RunningStats throughput;
    RunningStats decoded_fraction;
    RunningStats eta;
    RunningStats eta_max;
    RunningStats gamma;
    RunningStats gamma_max;
    RunningStats energy; // linear, over N0
    RunningStats mean_rate;

    void add(const TrialMetrics& t);
};

/// Runs point.trials trials, possibly on several threads. Per-trial results
/// are reduced in trial order, so the outcome is independent of threading.
PointStats run_point(const SweepPoint& point);

struct SweepRecord {
    std::string scheme;
    std::string distribution;
    int messages = 0;
    int slots = 0;
    double load = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> mu;
    PointStats stats;
    double l_avg = 0.0;
    std::optional<double> gamma_irsa; // reference energies over N0, when hat_R is set
    std::optional<double> gamma_min;
    std::string error; // non-empty for failed or flagged points
};

/// One record per G point. A point that throws is recorded with its error
/// and the sweep continues.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

struct RsTuneOptions {
    std::vector<double> alpha_grid;
    std::vector<double> beta_grid;
    double throughput_fraction = 0.97;
    std::optional<double> throughput_cap;

    /// alpha in {0} + 12 log-spaced values on [0.05, 2]; beta 5 log-spaced on [0.5, 2].
    static RsTuneOptions defaults();
    bool operator==(const RsTuneOptions&) const = default;
};

/// Per G point, the (alpha, beta) maximizing mean eta subject to
/// mean T >= fraction * min(G, cap); ties go to larger T, then smaller alpha.
/// Points with no feasible pair are returned with `error` set.
std::vector<SweepRecord> tune_rs(const SweepSpec& spec, const RsTuneOptions& options);

struct MuTuneOptions {
    double target_fraction = 0.90; // of the K messages
    double mu_max = 10.0;
    double resolution = 0.01;

    bool operator==(const MuTuneOptions&) const = default;
};

struct MuTuneResult {
    bool feasible = false;
    double mu = 0.0;
    PointStats stats;
};

/// Smallest mu on the grid 1, 1 + res, ..., mu_max whose mean decoded
/// fraction reaches the target, found by bisection. Every candidate reuses
/// the same frames, which makes the decoded fraction monotone in mu.
MuTuneResult tune_mu(const SweepPoint& point, const MuTuneOptions& options);

/// tune_mu at every G point of a PA spec.
std::vector<SweepRecord> tune_mu_sweep(const SweepSpec& spec, const MuTuneOptions& options);

struct CompareOptions {
    double load = 0.8;
    std::vector<double> energy_grid_db; // l_avg E_s / N0 for the RS runs
    double min_throughput = 0.78;
    RsTuneOptions rs = RsTuneOptions::defaults();
    MuTuneOptions pa;

    bool operator==(const CompareOptions&) const = default;
};

struct CompareRow {
    double energy_db = 0.0;       // RS: l_avg E_s / N0
    double es_over_n0 = 0.0;
    bool rs_feasible = false;
    double alpha = 0.0;
    double beta = 0.0;
    double rs_rate = 0.0;         // mean selected rate per user
    double rs_throughput = 0.0;
    bool pa_feasible = false;
    double mu = 0.0;
    double pa_energy_db = 0.0;    // Gamma_PA at the tuned mu, target rate = rs_rate
    double pa_throughput = 0.0;
    double irsa_energy_db = 0.0;  // l_avg (2^(2R/L) - 1) at R = rs_rate
    std::string error;
};

/// RS/PA/IRSA energy comparison at a fixed load (spec.loads is ignored).
std::vector<CompareRow> compare_rs_pa(const SweepSpec& spec, const CompareOptions& options);

} // namespace irsa
