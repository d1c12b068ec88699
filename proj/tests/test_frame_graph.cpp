#include "support.hpp"

#include "irsa/errors.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace irsa;
using irsa::testing::fig2_graph;

TEST_CASE("Fig. 2 graph degrees")
{
    const auto g = fig2_graph();
    CHECK(g.messages() == 4);
    CHECK(g.slots() == 5);
    CHECK(g.edges() == 10);
    const int expected[] = {2, 2, 3, 1, 2};
    for (int j = 0; j < 5; ++j)
        CHECK(g.slot_degree(j) == expected[j]);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 3);
}

TEST_CASE("malformed adjacency is rejected")
{
    CHECK_THROWS_AS(FrameGraph::from_adjacency(3, {{0, 0}}), ConfigurationError);
    CHECK_THROWS_AS(FrameGraph::from_adjacency(3, {{3}}), ConfigurationError);
    CHECK_THROWS_AS(FrameGraph::from_adjacency(3, {{-1}}), ConfigurationError);
    CHECK_THROWS_AS(FrameGraph::from_adjacency(3, {{}}), ConfigurationError);
    CHECK_THROWS_AS(FrameGraph::from_adjacency(0, {{0}}), ConfigurationError);
}

TEST_CASE("build_frame rejects degrees above M")
{
    Rng rng(1);
    CHECK_THROWS_AS(build_frame(10, 15, fixed_l3(), rng), ConfigurationError);
    CHECK_NOTHROW(build_frame(10, 16, fixed_l3(), rng));
    CHECK_THROWS_AS(build_frame(0, 16, fixed_l3(), rng), ConfigurationError);
}

TEST_CASE("build_frame: distinct slots, mean degree and uniform slot use")
{
    const auto dist = modified_soliton(10);
    Rng rng(99);
    const int K = 300, M = 375, frames = 400;
    double total_edges = 0.0;
    std::vector<double> slot_hits(M, 0.0);
    for (int f = 0; f < frames; ++f) {
        const auto g = build_frame(K, M, dist, rng);
        total_edges += g.edges();
        for (int k = 0; k < K; ++k) {
            const auto s = g.slots_of(k);
            std::set<int> uniq(s.begin(), s.end());
            REQUIRE(uniq.size() == s.size());
            REQUIRE(std::is_sorted(s.begin(), s.end()));
        }
        for (int j = 0; j < M; ++j)
            slot_hits[j] += g.slot_degree(j);
    }
    const double mean_degree = total_edges / (double(K) * frames);
    const double se = std::sqrt(dist.variance() / (double(K) * frames));
    CHECK(std::abs(mean_degree - dist.mean()) < 5 * se);

    // every slot is equally likely: per-slot load has mean r_avg
    const double r_avg = double(K) / M * dist.mean();
    double lo = 1e9, hi = 0.0;
    for (double h : slot_hits) {
        lo = std::min(lo, h / frames);
        hi = std::max(hi, h / frames);
    }
    CHECK(lo > 0.7 * r_avg);
    CHECK(hi < 1.3 * r_avg);
}

TEST_CASE("edge list round trip")
{
    Rng rng(5);
    const auto g = build_frame(40, 50, fixed_l3(), rng);
    std::stringstream buf;
    write_edge_list(buf, g);
    const auto h = read_edge_list(buf);
    REQUIRE(h.messages() == g.messages());
    REQUIRE(h.slots() == g.slots());
    for (int k = 0; k < g.messages(); ++k) {
        const auto a = g.slots_of(k);
        const auto b = h.slots_of(k);
        CHECK(std::vector<int>(a.begin(), a.end()) == std::vector<int>(b.begin(), b.end()));
    }
}

TEST_CASE("edge list without header")
{
    std::istringstream in("0\t1\n1\t0\n1\t2\n");
    const auto g = read_edge_list(in);
    CHECK(g.messages() == 2);
    CHECK(g.slots() == 3);
    std::istringstream bad("0\tx\n");
    CHECK_THROWS_AS(read_edge_list(bad), ConfigurationError);
}

TEST_CASE("residual state bookkeeping")
{
    const auto g = fig2_graph();
    const std::vector<double> e{1.0, 2.0, 3.0, 4.0};
    ResidualState st(g, e);
    CHECK(st.remaining() == 4);
    CHECK(st.slot_interference(2) == doctest::Approx(9.0));
    CHECK(st.degree_one_slots() == std::vector<int>{3});
    CHECK(st.sole_message(3) == 1);

    st.peel(1);
    CHECK(st.decoded(1));
    CHECK(st.remaining() == 3);
    CHECK(st.slot_degree(0) == 1);
    CHECK(st.slot_degree(2) == 2);
    CHECK(st.slot_degree(3) == 0);
    CHECK(st.slot_interference(2) == doctest::Approx(7.0));
    CHECK(st.degree_one_slots() == std::vector<int>{0});
    CHECK_THROWS_AS(st.peel(1), std::logic_error);

    st.peel(2);
    st.peel(3);
    st.peel(0);
    CHECK(st.remaining() == 0);
    for (int j = 0; j < 5; ++j) {
        CHECK(st.slot_degree(j) == 0);
        CHECK(st.slot_interference(j) == 0.0);
    }
}
