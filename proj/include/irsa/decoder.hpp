#pragma once

#include "irsa/frame_graph.hpp"
#include "irsa/schemes.hpp"

#include <cstdint>
#include <vector>

namespace irsa {

enum class DecodePhase : std::uint8_t { none, peeling, residual };

std::string_view to_string(DecodePhase phase);

struct DecodeResult {
    std::vector<std::uint8_t> decoded;
    std::vector<int> decode_step;   // -1 when undecoded
    std::vector<double> genie_rate; // R_max at the residual state of the decode step; 0 when undecoded
    std::vector<DecodePhase> phase;
    std::vector<int> order;         // messages in decode order

    int count() const { return static_cast<int>(order.size()); }
};

/// One successful decode, as reported by the decode-one trace.
struct DecodeStep {
    int step;
    DecodePhase phase;
    int message;
    int slot; // degree-one slot that triggered the attempt; -1 in the residual phase
    double sinr;
    double rate;
    double genie_rate;
};

/// Relative slack on decode thresholds so that a condition met with equality
/// in exact arithmetic is not lost to rounding.
inline constexpr double kThresholdTolerance = 1e-12;

/// MRC SINR of an undecoded message against the residual state:
///   sum_{j in U_msg} E_msg / (I_j + N0)
/// where I_j is the energy of the other undecoded messages of slot j.
double effective_sinr(int msg, const ResidualState& state, double n0);

/// Two-phase SIC receiver, iterated to a fixed point.
///
/// Phase 1 sweeps slots in ascending order and attempts the sole undecoded
/// message of every degree-one slot; sweeps repeat until one yields no
/// success. Phase 2 scans undecoded messages in ascending order; the first
/// success is peeled and control returns to phase 1. Decoding stops when a
/// full phase-2 scan succeeds nowhere.
///
/// Success: IRSA - the message sits in a degree-one slot (no MRC, no phase 2);
/// RS - R_RS^i <= (L/2) log2(1 + SINR); PA - SINR >= hat_E_s / N0.
DecodeResult decode_frame(const FrameGraph& graph, const TransmitProfile& profile,
                          const SchemeConfig& scheme, const ChannelConfig& cfg,
                          std::vector<DecodeStep>* trace = nullptr);

/// Reference erasure peeling: recomputes every slot degree from scratch each
/// round and resolves one degree-one slot at a time. Returns decoded flags.
std::vector<std::uint8_t> irsa_peeling_oracle(const FrameGraph& graph);

} // namespace irsa
