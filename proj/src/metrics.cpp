#include "irsa/metrics.hpp"

#include "irsa/errors.hpp"

namespace irsa {

double c_ref(const ChannelConfig& cfg, double l_avg, double es)
{
    const double k_tilde = cfg.messages * l_avg * es / (static_cast<double>(cfg.slots) * cfg.n0);
    return 0.5 * cfg.channel_uses * cfg.slots * std::log2(1.0 + k_tilde);
}

TrialMetrics trial_metrics(const DecodeResult& result, const TransmitProfile& profile,
                           const FrameGraph& graph, const ChannelConfig& cfg)
{
    TrialMetrics t;
    t.decoded = result.count();
    t.throughput = static_cast<double>(t.decoded) / cfg.slots;
    t.decoded_fraction = static_cast<double>(t.decoded) / cfg.messages;
    for (int m : result.order) {
        t.sum_rate += profile.rate[m];
        t.sum_rate_max += result.genie_rate[m];
    }
    // C_ref at the nominal per-user energy: l_avg E_s for uniform power,
    // the degree-independent l_i E_s^i for PA
    t.c_ref = c_ref(cfg, 1.0, profile.user_energy);
    t.eta = t.sum_rate / t.c_ref;
    t.eta_max = t.sum_rate_max / t.c_ref;
    t.gamma = t.sum_rate / cfg.slots;
    t.gamma_max = t.sum_rate_max / cfg.slots;

    double rate_total = 0.0;
    double energy_total = 0.0;
    for (int k = 0; k < graph.messages(); ++k) {
        rate_total += profile.rate[k];
        energy_total += graph.degree(k) * profile.energy[k];
    }
    t.mean_rate = rate_total / graph.messages();
    t.energy_per_user = energy_total / (graph.messages() * cfg.n0);
    t.energy_per_user_db = to_db(t.energy_per_user);
    return t;
}

double gamma_pa_analytic(double mu, double hat_es, double n0, double l_avg, double r_avg)
{
    const double x = hat_es / n0;
    const double denom = (1.0 - r_avg) * x + l_avg;
    if (!(denom > 0.0))
        throw InfeasibleOperatingPoint("PA average-energy denominator is not positive (load too high)");
    return mu * x * l_avg / denom;
}

ReferenceEnergies gamma_irsa_min(double hat_es, double n0, double l_avg)
{
    return {l_avg * hat_es / n0, hat_es / n0};
}

double jensen_bound_rs(double es, double n0, int channel_uses, double alpha, double beta,
                       double l_avg, double r_avg)
{
    if (alpha == 0.0)
        return rate_irsa(es, n0, channel_uses);
    const double denom = (beta * r_avg - 1.0) * es + n0;
    if (!(denom > 0.0))
        throw TuningParameterError("RS estimated-interference denominator is not positive");
    return 0.5 * channel_uses * std::log2(1.0 + es / n0 + alpha * (l_avg - 1.0) * es / denom);
}

} // namespace irsa
