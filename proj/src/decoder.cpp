#include "irsa/decoder.hpp"

#include <algorithm>
#include <cmath>

namespace irsa {

std::string_view to_string(DecodePhase phase)
{
    switch (phase) {
    case DecodePhase::none: return "none";
    case DecodePhase::peeling: return "peeling";
    case DecodePhase::residual: return "residual";
    }
    return "?";
}

double effective_sinr(int msg, const ResidualState& state, double n0)
{
    const double e = state.energy()[msg];
    double sinr = 0.0;
    for (int s : state.graph().slots_of(msg)) {
        // a degree-one slot holds nothing but this message
        const double interference =
            state.slot_degree(s) == 1 ? 0.0 : std::max(0.0, state.slot_interference(s) - e);
        sinr += e / (interference + n0);
    }
    return sinr;
}

namespace {

class Receiver {
public:
    Receiver(const FrameGraph& graph, const TransmitProfile& profile, const SchemeConfig& scheme,
             const ChannelConfig& cfg, std::vector<DecodeStep>* trace)
        : graph_(graph),
          profile_(profile),
          scheme_(scheme),
          cfg_(cfg),
          trace_(trace),
          state_(graph, profile.energy),
          stale_(static_cast<std::size_t>(graph.messages()), 1),
          needed_(static_cast<std::size_t>(graph.messages()), 0.0)
    {
        const auto k = static_cast<std::size_t>(graph.messages());
        result_.decoded.assign(k, 0);
        result_.decode_step.assign(k, -1);
        result_.genie_rate.assign(k, 0.0);
        result_.phase.assign(k, DecodePhase::none);
        result_.order.reserve(k);

        const double offset = scheme.rmax_includes_one ? 0.0 : 1.0;
        if (scheme.variant == Scheme::rs) {
            for (int m = 0; m < graph.messages(); ++m)
                needed_[m] = offset + rs_assumed_sinr(graph.degree(m), profile.uniform_es, cfg.n0,
                                                      *scheme.alpha, *scheme.beta, profile.r_avg);
        } else if (scheme.variant == Scheme::pa) {
            std::fill(needed_.begin(), needed_.end(), profile.hat_es / cfg.n0);
        }
    }

    DecodeResult run()
    {
        if (scheme_.variant == Scheme::irsa) {
            peeling_phase();
            return std::move(result_);
        }
        while (true) {
            peeling_phase();
            if (!residual_phase())
                break;
        }
        return std::move(result_);
    }

private:
    double genie(double sinr) const
    {
        const double arg = scheme_.rmax_includes_one ? 1.0 + sinr : sinr;
        return 0.5 * cfg_.channel_uses * std::log2(arg);
    }

    // RS/PA attempt; a failure is cached until one of the message's slots changes
    bool attempt(int msg, DecodePhase phase, int slot)
    {
        const double sinr = effective_sinr(msg, state_, cfg_.n0);
        if (sinr >= needed_[msg] * (1.0 - kThresholdTolerance)) {
            accept(msg, phase, slot, sinr, genie(sinr));
            return true;
        }
        stale_[msg] = 0;
        return false;
    }

    void accept(int msg, DecodePhase phase, int slot, double sinr, double genie_rate)
    {
        const int step = result_.count();
        result_.decoded[msg] = 1;
        result_.decode_step[msg] = step;
        result_.genie_rate[msg] = genie_rate;
        result_.phase[msg] = phase;
        result_.order.push_back(msg);
        if (trace_)
            trace_->push_back({step, phase, msg, slot, sinr, profile_.rate[msg], genie_rate});
        state_.peel(msg);
        for (int s : graph_.slots_of(msg))
            for (int other : graph_.messages_in(s))
                stale_[other] = 1;
    }

    void peeling_phase()
    {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int j = 0; j < graph_.slots(); ++j) {
                if (state_.slot_degree(j) != 1)
                    continue;
                const int msg = state_.sole_message(j);
                if (scheme_.variant == Scheme::irsa) {
                    const double e = profile_.energy[msg];
                    accept(msg, DecodePhase::peeling, j, e / cfg_.n0, rate_irsa(e, cfg_.n0, cfg_.channel_uses));
                    progress = true;
                } else if (stale_[msg] && attempt(msg, DecodePhase::peeling, j)) {
                    progress = true;
                }
            }
        }
    }

    bool residual_phase()
    {
        for (int m = 0; m < graph_.messages(); ++m)
            if (!state_.decoded(m) && stale_[m] && attempt(m, DecodePhase::residual, -1))
                return true;
        return false;
    }

    const FrameGraph& graph_;
    const TransmitProfile& profile_;
    const SchemeConfig& scheme_;
    const ChannelConfig& cfg_;
    std::vector<DecodeStep>* trace_;
    ResidualState state_;
    std::vector<std::uint8_t> stale_; // 1 when the message's last attempt (if any) is out of date
    std::vector<double> needed_;
    DecodeResult result_;
};

} // namespace

DecodeResult decode_frame(const FrameGraph& graph, const TransmitProfile& profile,
                          const SchemeConfig& scheme, const ChannelConfig& cfg,
                          std::vector<DecodeStep>* trace)
{
    return Receiver(graph, profile, scheme, cfg, trace).run();
}

std::vector<std::uint8_t> irsa_peeling_oracle(const FrameGraph& graph)
{
    std::vector<std::uint8_t> decoded(static_cast<std::size_t>(graph.messages()), 0);
    while (true) {
        int found = -1;
        for (int j = 0; j < graph.slots() && found < 0; ++j) {
            int live = 0;
            int last = -1;
            for (int k : graph.messages_in(j))
                if (!decoded[k]) {
                    ++live;
                    last = k;
                }
            if (live == 1)
                found = last;
        }
        if (found < 0)
            return decoded;
        decoded[found] = 1;
    }
}

} // namespace irsa
