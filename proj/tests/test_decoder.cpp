#include "support.hpp"

#include <doctest.h>

using namespace irsa;
using namespace irsa::testing;

TEST_CASE("effective SINR examples")
{
    const double es = 0.3;
    {
        const auto g = FrameGraph::from_adjacency(1, {{0}});
        const std::vector<double> e{es};
        ResidualState st(g, e);
        CHECK(effective_sinr(0, st, 1.0) == doctest::Approx(es));
    }
    {
        const auto g = FrameGraph::from_adjacency(2, {{0, 1}, {0, 1}});
        const std::vector<double> e{es, es};
        ResidualState st(g, e);
        CHECK(effective_sinr(0, st, 1.0) == doctest::Approx(2 * es / (es + 1.0)));
    }
    {
        const auto g = fig2_graph();
        const std::vector<double> e(4, es);
        ResidualState st(g, e);
        CHECK(effective_sinr(1, st, 1.0) == doctest::Approx(es / (es + 1) + es / (2 * es + 1) + es));
    }
}

TEST_CASE("IRSA on the Fig. 2 graph decodes everything in order m2, m3, m4, m1")
{
    const auto g = fig2_graph();
    const auto cfg = channel_for(g, 1.0);
    const auto p = make_profile(g, SchemeConfig{}, cfg, 2.5);
    std::vector<DecodeStep> trace;
    const auto r = decode_frame(g, p, SchemeConfig{}, cfg, &trace);
    CHECK(r.count() == 4);
    CHECK(r.order == std::vector<int>{1, 2, 3, 0});
    REQUIRE(trace.size() == 4);
    CHECK(trace[0].slot == 3);
    CHECK(trace[1].slot == 0);
    for (int k = 0; k < 4; ++k) {
        CHECK(r.phase[k] == DecodePhase::peeling);
        CHECK(r.genie_rate[k] == doctest::Approx(rate_irsa(1.0, 1.0, 100)));
    }
    CHECK(r.decode_step == std::vector<int>{3, 0, 1, 2});
    const auto oracle = irsa_peeling_oracle(g);
    CHECK(std::count(oracle.begin(), oracle.end(), 1) == 4);
}

TEST_CASE("private slots decode in the peeling phase for every scheme")
{
    const auto g = FrameGraph::from_adjacency(6, {{0}, {1, 2}, {3, 4, 5}});
    auto cfg = channel_for(g, 0.2);
    cfg.hat_rate_bits = 5;
    const SchemeConfig schemes[] = {{}, {Scheme::rs, 0.8, 1.0, std::nullopt}, {Scheme::pa, std::nullopt, std::nullopt, 1.0}};
    for (const auto& s : schemes) {
        const auto p = make_profile(g, s, cfg, 2.0);
        const auto r = decode_frame(g, p, s, cfg);
        CHECK(r.count() == 3);
        for (int k = 0; k < 3; ++k)
            CHECK(r.phase[k] == DecodePhase::peeling);
    }
}

TEST_CASE("two messages on the same two slots form a stopping set for IRSA")
{
    const auto g = FrameGraph::from_adjacency(2, {{0, 1}, {0, 1}});
    const auto cfg = channel_for(g, 1.0);
    const auto r = decode_frame(g, make_profile(g, SchemeConfig{}, cfg, 2.0), SchemeConfig{}, cfg);
    CHECK(r.count() == 0);
    CHECK(r.decode_step == std::vector<int>{-1, -1});
    CHECK(irsa_peeling_oracle(g) == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("residual MRC breaks the stopping set at high enough SINR")
{
    // a 2-regular graph meets the PA target with equality at mu = 1
    const auto g = FrameGraph::from_adjacency(2, {{0, 1}, {0, 1}});
    auto cfg = channel_for(g, 1.0);
    cfg.hat_rate_bits = 20;
    const SchemeConfig pa{Scheme::pa, std::nullopt, std::nullopt, 1.0};
    const auto p = make_profile(g, pa, cfg, 2.0);
    const auto r = decode_frame(g, p, pa, cfg);
    CHECK(r.count() == 2);
    CHECK(r.phase[0] == DecodePhase::residual);
    CHECK(r.phase[1] == DecodePhase::peeling);
}

TEST_CASE("IRSA decode equals the exhaustive peeling oracle")
{
    Rng rng(2024);
    const auto dist = fixed_l3();
    for (int f = 0; f < 1000; ++f) {
        const auto g = build_frame(50, 60, dist, rng);
        const auto cfg = channel_for(g, 0.1);
        const auto r = decode_frame(g, make_profile(g, SchemeConfig{}, cfg, dist.mean()), SchemeConfig{}, cfg);
        REQUIRE(r.decoded == irsa_peeling_oracle(g));
    }
}

TEST_CASE("RS and PA decode match a literal transcription of the receiver")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int f = 0; f < 600; ++f) {
        const int K = 5 + static_cast<int>(u(rng) * 40);
        const int M = 4 + static_cast<int>(u(rng) * 40);
        const auto g = random_graph(rng, K, M, 5);
        const double l_avg = static_cast<double>(g.edges()) / K;
        ChannelConfig cfg = channel_for(g, 0.02 + u(rng));
        cfg.hat_rate_bits = 1.0 + 20.0 * u(rng);
        SchemeConfig s;
        if (f % 2 == 0) {
            s = SchemeConfig{Scheme::rs, 2.0 * u(rng), 2.0 + u(rng), std::nullopt, f % 4 == 0};
        } else {
            s = SchemeConfig{Scheme::pa, std::nullopt, std::nullopt, 1.0 + 2.0 * u(rng)};
            if ((1.0 - cfg.load() * l_avg) * hat_es_from_rate(*cfg.hat_rate_bits, 100, 1.0) + l_avg <= 0.0)
                continue;
        }
        TransmitProfile p;
        try {
            p = make_profile(g, s, cfg, l_avg);
        } catch (const InfeasibleError&) {
            continue;
        }
        const auto r = decode_frame(g, p, s, cfg);
        const auto ref = reference_decode(g, p, s, cfg);
        REQUIRE(r.decoded == ref.decoded);
        REQUIRE(r.order == ref.order);
        for (int m : r.order) {
            CHECK(r.genie_rate[m] == doctest::Approx(ref.genie_rate[m]).epsilon(1e-9));
            if (s.variant == Scheme::rs)
                CHECK(r.genie_rate[m] >= p.rate[m] * (1 - 1e-9));
        }
        for (std::size_t i = 0; i < r.order.size(); ++i)
            CHECK(r.decode_step[r.order[i]] == static_cast<int>(i));
    }
}

TEST_CASE("trace carries phase, slot and rates")
{
    const auto g = FrameGraph::from_adjacency(3, {{0, 1}, {1, 2}});
    auto cfg = channel_for(g, 0.5);
    const SchemeConfig rs{Scheme::rs, 0.0, 1.0, std::nullopt};
    const auto p = make_profile(g, rs, cfg, 2.0);
    std::vector<DecodeStep> trace;
    const auto r = decode_frame(g, p, rs, cfg, &trace);
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].message == 0);
    CHECK(trace[0].slot == 0);
    CHECK(trace[0].phase == DecodePhase::peeling);
    CHECK(trace[0].sinr == doctest::Approx(0.5 + 0.5 / 1.5));
    CHECK(trace[0].rate == doctest::Approx(rate_irsa(0.5, 1.0, 100)));
    CHECK(trace[1].sinr == doctest::Approx(1.0));
    CHECK(r.count() == 2);
}
