#include "irsa/schemes.hpp"

#include "irsa/errors.hpp"

#include <cmath>
#include <string>

namespace irsa {

std::string_view to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::irsa: return "IRSA";
    case Scheme::rs: return "RS";
    case Scheme::pa: return "PA";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    if (name == "IRSA" || name == "irsa")
        return Scheme::irsa;
    if (name == "RS" || name == "rs" || name == "RS-IRSA")
        return Scheme::rs;
    if (name == "PA" || name == "pa" || name == "PA-IRSA")
        return Scheme::pa;
    return std::nullopt;
}

static bool positive_finite(double x)
{
    return std::isfinite(x) && x > 0.0;
}

void ChannelConfig::validate() const
{
    if (messages < 1)
        throw InvalidParameter("K must be >= 1");
    if (slots < 1)
        throw InvalidParameter("M must be >= 1");
    if (channel_uses < 1)
        throw InvalidParameter("L_cu must be >= 1");
    if (!positive_finite(n0))
        throw InvalidParameter("N0 must be positive");
    if (tilde_es_over_n0 && !positive_finite(*tilde_es_over_n0))
        throw InvalidParameter("tilde_Es_over_N0 must be positive");
    if (es_over_n0 && !positive_finite(*es_over_n0))
        throw InvalidParameter("Es_over_N0 must be positive");
    if (hat_rate_bits && !positive_finite(*hat_rate_bits))
        throw InvalidParameter("hat_R_bits must be positive");
}

void SchemeConfig::validate() const
{
    switch (variant) {
    case Scheme::irsa:
        if (alpha || beta || mu)
            throw InvalidParameter("IRSA takes no alpha, beta or mu");
        break;
    case Scheme::rs:
        if (!alpha || !beta)
            throw InvalidParameter("RS requires alpha and beta");
        if (mu)
            throw InvalidParameter("RS takes no mu");
        // alpha = 0 is admitted: it reduces RS to IRSA rates with an MRC receiver
        if (!(std::isfinite(*alpha) && *alpha >= 0.0))
            throw InvalidParameter("alpha must be >= 0");
        if (!positive_finite(*beta))
            throw InvalidParameter("beta must be positive");
        break;
    case Scheme::pa:
        if (!mu)
            throw InvalidParameter("PA requires mu");
        if (alpha || beta)
            throw InvalidParameter("PA takes no alpha or beta");
        if (!(std::isfinite(*mu) && *mu >= 1.0))
            throw InvalidParameter("mu must be >= 1");
        break;
    }
}

double es_from_reference(const ChannelConfig& cfg, double l_avg)
{
    if (!(l_avg > 0.0))
        throw InvalidParameter("l_avg must be positive");
    if (!cfg.tilde_es_over_n0)
        throw InvalidParameter("tilde_Es_over_N0 is not set");
    return cfg.slots * (*cfg.tilde_es_over_n0 * cfg.n0) / l_avg;
}

double rate_irsa(double es, double n0, int channel_uses)
{
    return 0.5 * channel_uses * std::log1p(es / n0) / std::log(2.0);
}

double hat_es_from_rate(double hat_rate, int channel_uses, double n0)
{
    return n0 * std::expm1(std::log(2.0) * 2.0 * hat_rate / channel_uses);
}

double rs_assumed_sinr(int degree, double es, double n0, double alpha, double beta, double r_avg)
{
    // alpha = 0 is plain IRSA rate selection whatever beta is
    if (alpha == 0.0)
        return es / n0;
    const double denom = (beta * r_avg - 1.0) * es + n0;
    if (!(denom > 0.0))
        throw TuningParameterError("RS estimated-interference denominator is not positive");
    return es / n0 + alpha * (degree - 1) * es / denom;
}

double rate_rs(int degree, double es, double n0, int channel_uses, double alpha, double beta,
               double r_avg)
{
    return 0.5 * channel_uses * std::log2(1.0 + rs_assumed_sinr(degree, es, n0, alpha, beta, r_avg));
}

double pa_bar_es(double hat_es, double n0, double l_avg, double r_avg)
{
    const double denom = (1.0 - r_avg) * hat_es / n0 + l_avg;
    if (!(denom > 0.0))
        throw InfeasibleOperatingPoint("PA average-energy denominator is not positive (load too high)");
    return hat_es / denom;
}

TransmitProfile pa_powers(const FrameGraph& graph, const ChannelConfig& cfg, double mu, double l_avg,
                          double r_avg)
{
    if (!cfg.hat_rate_bits)
        throw InvalidParameter("PA requires hat_R_bits");
    const double hat_es = hat_es_from_rate(*cfg.hat_rate_bits, cfg.channel_uses, cfg.n0);
    const double bar_es = pa_bar_es(hat_es, cfg.n0, l_avg, r_avg);
    // l_i E_s^i is the same for every device
    const double user_energy = mu * (hat_es / cfg.n0) * ((r_avg - 1.0) * bar_es + cfg.n0);

    TransmitProfile p;
    p.energy.resize(static_cast<std::size_t>(graph.messages()));
    p.rate.assign(static_cast<std::size_t>(graph.messages()), *cfg.hat_rate_bits);
    for (int k = 0; k < graph.messages(); ++k)
        p.energy[k] = user_energy / graph.degree(k);
    p.hat_es = hat_es;
    p.l_avg = l_avg;
    p.r_avg = r_avg;
    p.user_energy = user_energy;
    return p;
}

double uniform_es(const ChannelConfig& cfg, double l_avg)
{
    if (cfg.es_over_n0)
        return *cfg.es_over_n0 * cfg.n0;
    if (cfg.tilde_es_over_n0)
        return es_from_reference(cfg, l_avg);
    if (cfg.hat_rate_bits)
        return hat_es_from_rate(*cfg.hat_rate_bits, cfg.channel_uses, cfg.n0);
    throw InvalidParameter("no energy given: set Es_over_N0, tilde_Es_over_N0 or hat_R_bits");
}

TransmitProfile make_profile(const FrameGraph& graph, const SchemeConfig& scheme,
                             const ChannelConfig& cfg, double l_avg)
{
    const double r_avg = cfg.load() * l_avg;
    if (scheme.variant == Scheme::pa)
        return pa_powers(graph, cfg, *scheme.mu, l_avg, r_avg);

    const double es = uniform_es(cfg, l_avg);
    TransmitProfile p;
    const auto n = static_cast<std::size_t>(graph.messages());
    p.energy.assign(n, es);
    p.rate.resize(n);
    if (scheme.variant == Scheme::irsa) {
        const double r = rate_irsa(es, cfg.n0, cfg.channel_uses);
        for (auto& x : p.rate)
            x = r;
    } else {
        for (int k = 0; k < graph.messages(); ++k)
            p.rate[k] = rate_rs(graph.degree(k), es, cfg.n0, cfg.channel_uses, *scheme.alpha,
                                *scheme.beta, r_avg);
    }
    p.uniform_es = es;
    p.l_avg = l_avg;
    p.r_avg = r_avg;
    p.user_energy = l_avg * es;
    return p;
}

} // namespace irsa
