#pragma once

#include "irsa/distributions.hpp"
#include "irsa/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace irsa {

/// Realized bipartite message/slot graph of one frame. Messages and slots
/// are dense 0-based indices; both adjacency directions are stored in CSR
/// form. Immutable after construction.
class FrameGraph {
public:
    /// `message_slots[k]` lists the slots of message k. Each list is sorted
    /// internally; entries must be distinct and in [0, slots).
    /// Throws ConfigurationError on malformed adjacency.
    static FrameGraph from_adjacency(int slots, const std::vector<std::vector<int>>& message_slots);

    /// Same contract from CSR input: row k is flat[offsets[k], offsets[k+1]).
    static FrameGraph from_csr(int slots, std::vector<int> offsets, std::vector<int> flat);

    int messages() const { return messages_; }
    int slots() const { return slots_; }
    std::size_t edges() const { return msg_slots_.size(); }

    std::span<const int> slots_of(int msg) const
    {
        return {msg_slots_.data() + msg_offset_[msg], msg_slots_.data() + msg_offset_[msg + 1]};
    }
    std::span<const int> messages_in(int slot) const
    {
        return {slot_msgs_.data() + slot_offset_[slot], slot_msgs_.data() + slot_offset_[slot + 1]};
    }
    int degree(int msg) const { return msg_offset_[msg + 1] - msg_offset_[msg]; }
    int slot_degree(int slot) const { return slot_offset_[slot + 1] - slot_offset_[slot]; }

private:
    FrameGraph() = default;

    int messages_ = 0;
    int slots_ = 0;
    std::vector<int> msg_offset_;
    std::vector<int> msg_slots_;
    std::vector<int> slot_offset_;
    std::vector<int> slot_msgs_;
};

/// Each of `messages` devices draws a degree from `dist` and picks that many
/// distinct slots uniformly (partial Fisher-Yates). Throws ConfigurationError
/// when the distribution's max degree exceeds `slots` or `messages` < 1.
FrameGraph build_frame(int messages, int slots, const DegreeDistribution& dist, Rng& rng);

/// Debug export: a `# messages=K slots=M` header, then one
/// `message<TAB>slot` line per edge.
void write_edge_list(std::ostream& out, const FrameGraph& graph);

/// Inverse of write_edge_list. Without the header, K and M are taken as one
/// past the largest indices seen. Throws ConfigurationError on bad input.
FrameGraph read_edge_list(std::istream& in);

/// Per-trial mutable decoding state. Holds non-owning views of the graph and
/// the per-message energies per channel use; both must outlive the state.
///
/// slot_degree[j] counts undecoded messages in slot j. slot_interference[j]
/// sums their energies; it is recomputed from the adjacency for every slot
/// touched by a peel, so it carries no accumulated drift.
class ResidualState {
public:
    ResidualState(const FrameGraph& graph, std::span<const double> energy);

    const FrameGraph& graph() const { return *graph_; }
    std::span<const double> energy() const { return energy_; }

    bool decoded(int msg) const { return decoded_[msg] != 0; }
    std::span<const std::uint8_t> decoded_flags() const { return decoded_; }
    int slot_degree(int slot) const { return slot_degree_[slot]; }
    double slot_interference(int slot) const { return slot_interference_[slot]; }
    int remaining() const { return remaining_; }

    /// Cancels every replica of `msg`. Throws std::logic_error if already decoded.
    void peel(int msg);

    /// Slots with residual degree exactly one, ascending.
    std::vector<int> degree_one_slots() const;

    /// The undecoded message of a slot whose residual degree is one.
    int sole_message(int slot) const;

private:
    double slot_energy(int slot) const;

    const FrameGraph* graph_;
    std::span<const double> energy_;
    std::vector<std::uint8_t> decoded_;
    std::vector<int> slot_degree_;
    std::vector<double> slot_interference_;
    int remaining_;
};

} // namespace irsa
