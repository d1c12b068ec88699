// Shared fixtures and independent reference computations for the tests.
#pragma once

#include "irsa/decoder.hpp"
#include "irsa/errors.hpp"
#include "irsa/frame_graph.hpp"
#include "irsa/random.hpp"
#include "irsa/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace irsa::testing {

// Four messages over five slots (0-based):
//   m1 -> {1}, m2 -> {0, 2, 3}, m3 -> {0, 2, 4}, m4 -> {1, 2, 4}
// Slot degrees are 2, 2, 3, 1, 2.
inline FrameGraph fig2_graph()
{
    return FrameGraph::from_adjacency(5, {{1}, {0, 2, 3}, {0, 2, 4}, {1, 2, 4}});
}

// Random adjacency with degrees in [1, max_degree], independent of build_frame.
inline FrameGraph random_graph(std::mt19937_64& rng, int messages, int slots, int max_degree)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(messages));
    std::vector<int> all(static_cast<std::size_t>(slots));
    for (int j = 0; j < slots; ++j)
        all[j] = j;
    std::uniform_int_distribution<int> deg(1, std::min(max_degree, slots));
    for (auto& row : adj) {
        std::shuffle(all.begin(), all.end(), rng);
        row.assign(all.begin(), all.begin() + deg(rng));
    }
    return FrameGraph::from_adjacency(slots, adj);
}

struct ReferenceResult {
    std::vector<std::uint8_t> decoded;
    std::vector<int> order;
    std::vector<double> genie_rate;
};

// Literal transcription of the two-phase receiver: full rescans, interference
// summed from scratch at every test, no caching of failed attempts.
inline ReferenceResult reference_decode(const FrameGraph& g, const TransmitProfile& p, const SchemeConfig& scheme,
                                        const ChannelConfig& cfg)
{
    const int K = g.messages();
    ReferenceResult r;
    r.decoded.assign(static_cast<std::size_t>(K), 0);
    r.genie_rate.assign(static_cast<std::size_t>(K), 0.0);

    auto live_in = [&](int slot) {
        std::vector<int> live;
        for (int k : g.messages_in(slot))
            if (!r.decoded[k])
                live.push_back(k);
        return live;
    };
    auto sinr_of = [&](int msg) {
        double s = 0.0;
        for (int slot : g.slots_of(msg)) {
            double interference = 0.0;
            for (int k : live_in(slot))
                if (k != msg)
                    interference += p.energy[k];
            s += p.energy[msg] / (interference + cfg.n0);
        }
        return s;
    };
    auto genie = [&](double sinr) {
        return 0.5 * cfg.channel_uses * std::log2(scheme.rmax_includes_one ? 1.0 + sinr : sinr);
    };
    auto succeeds = [&](int msg, double sinr) {
        if (scheme.variant == Scheme::pa)
            return sinr >= (p.hat_es / cfg.n0) * (1.0 - kThresholdTolerance);
        // RS: assigned rate no larger than the achievable one, compared in the SINR domain
        const double needed = std::exp2(2.0 * p.rate[msg] / cfg.channel_uses) - (scheme.rmax_includes_one ? 1.0 : 0.0);
        return sinr >= needed * (1.0 - 1e-9);
    };
    auto take = [&](int msg, double genie_rate) {
        r.decoded[msg] = 1;
        r.order.push_back(msg);
        r.genie_rate[msg] = genie_rate;
    };

    while (true) {
        bool phase1_progress = true;
        while (phase1_progress) {
            phase1_progress = false;
            for (int j = 0; j < g.slots(); ++j) {
                const auto live = live_in(j);
                if (live.size() != 1)
                    continue;
                const int msg = live.front();
                if (scheme.variant == Scheme::irsa) {
                    take(msg, rate_irsa(p.energy[msg], cfg.n0, cfg.channel_uses));
                    phase1_progress = true;
                    continue;
                }
                const double s = sinr_of(msg);
                if (succeeds(msg, s)) {
                    take(msg, genie(s));
                    phase1_progress = true;
                }
            }
        }
        if (scheme.variant == Scheme::irsa)
            return r;
        bool found = false;
        for (int m = 0; m < K && !found; ++m) {
            if (r.decoded[m])
                continue;
            const double s = sinr_of(m);
            if (succeeds(m, s)) {
                take(m, genie(s));
                found = true;
            }
        }
        if (!found)
            return r;
    }
}

inline ChannelConfig channel_for(const FrameGraph& g, double es_over_n0)
{
    ChannelConfig cfg;
    cfg.messages = g.messages();
    cfg.slots = g.slots();
    cfg.es_over_n0 = es_over_n0;
    return cfg;
}

} // namespace irsa::testing
