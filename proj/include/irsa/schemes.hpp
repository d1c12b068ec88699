#pragma once

#include "irsa/frame_graph.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace irsa {

enum class Scheme { irsa, rs, pa };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Physical parameters of one operating point. Energies are per channel use,
/// in the same units as `n0`. The uniform transmit energy E_s used by IRSA
/// and RS is taken from the first of `es_over_n0`, `tilde_es_over_n0`
/// (via the energy balance with the coordinated reference) or
/// `hat_rate_bits` (the interference-free energy for that rate) that is set.
struct ChannelConfig {
    int messages = 300;
    int slots = 375;
    int channel_uses = 100;
    double n0 = 1.0;
    std::optional<double> tilde_es_over_n0;
    std::optional<double> es_over_n0;
    std::optional<double> hat_rate_bits;

    double load() const { return static_cast<double>(messages) / slots; }

    /// Throws InvalidParameter on non-positive counts or energies.
    void validate() const;

    bool operator==(const ChannelConfig&) const = default;
};

struct SchemeConfig {
    Scheme variant = Scheme::irsa;
    std::optional<double> alpha; // RS
    std::optional<double> beta;  // RS
    std::optional<double> mu;    // PA
    /// Decodability threshold (L/2) log2(1 + SINR) when true, (L/2) log2(SINR) otherwise.
    bool rmax_includes_one = true;

    /// Throws InvalidParameter unless the variant's parameters are present and in range.
    void validate() const;

    bool operator==(const SchemeConfig&) const = default;
};

/// Per-message energies and rates assigned by a scheme for one frame.
struct TransmitProfile {
    std::vector<double> energy; // E_s^i
    std::vector<double> rate;   // R_i, bits per slot-length codeword
    double uniform_es = 0.0;    // IRSA/RS common energy; 0 for PA
    double hat_es = 0.0;        // PA interference-free energy for hat_R; 0 otherwise
    double l_avg = 0.0;
    double r_avg = 0.0;
    /// Nominal energy per user per channel use summed over replicas
    /// (l_avg E_s for IRSA/RS, the degree-independent l_i E_s^i for PA).
    double user_energy = 0.0;
};

/// E_s such that the frame spends the same total energy as the coordinated
/// reference at tilde_E_s: E_s = M tilde_E_s / l_avg.
double es_from_reference(const ChannelConfig& cfg, double l_avg);

/// (L/2) log2(1 + E_s/N0)
double rate_irsa(double es, double n0, int channel_uses);

/// Inverse of rate_irsa: N0 (2^(2 R / L) - 1).
double hat_es_from_rate(double hat_rate, int channel_uses, double n0);

/// SINR a degree-`degree` RS device assumes when picking its rate:
///   E_s/N0 + alpha (l - 1) E_s / ((beta r_avg - 1) E_s + N0)
/// Throws TuningParameterError when the denominator is not positive and alpha > 0.
double rs_assumed_sinr(int degree, double es, double n0, double alpha, double beta, double r_avg);

/// (L/2) log2(1 + rs_assumed_sinr(...))
double rate_rs(int degree, double es, double n0, int channel_uses, double alpha, double beta,
               double r_avg);

/// Uniform-power energy that balances a regular graph at the target SINR:
///   bar_E_s = hat_E_s / ((1 - r_avg) hat_E_s/N0 + l_avg)
/// Throws InfeasibleOperatingPoint when the denominator is not positive.
double pa_bar_es(double hat_es, double n0, double l_avg, double r_avg);

/// PA energies E_s^i = mu (hat_E_s/N0) ((r_avg - 1) bar_E_s + N0) / l_i and
/// the common rate hat_R for every message of `graph`.
TransmitProfile pa_powers(const FrameGraph& graph, const ChannelConfig& cfg, double mu, double l_avg,
                          double r_avg);

/// IRSA/RS common energy per channel use for this operating point.
double uniform_es(const ChannelConfig& cfg, double l_avg);

/// Profile of `scheme` for `graph`. r_avg is the analytic (K/M) l_avg.
TransmitProfile make_profile(const FrameGraph& graph, const SchemeConfig& scheme,
                             const ChannelConfig& cfg, double l_avg);

} // namespace irsa
