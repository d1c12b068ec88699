#include "irsa/frame_graph.hpp"

#include "irsa/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace irsa {

FrameGraph FrameGraph::from_adjacency(int slots, const std::vector<std::vector<int>>& message_slots)
{
    std::vector<int> offsets{0};
    std::vector<int> flat;
    offsets.reserve(message_slots.size() + 1);
    for (const auto& row : message_slots) {
        flat.insert(flat.end(), row.begin(), row.end());
        offsets.push_back(static_cast<int>(flat.size()));
    }
    return from_csr(slots, std::move(offsets), std::move(flat));
}

FrameGraph FrameGraph::from_csr(int slots, std::vector<int> offsets, std::vector<int> flat)
{
    if (slots < 1)
        throw ConfigurationError("frame needs at least one slot");

    FrameGraph g;
    g.messages_ = static_cast<int>(offsets.size()) - 1;
    g.slots_ = slots;
    g.msg_offset_ = std::move(offsets);
    g.msg_slots_ = std::move(flat);
    for (int k = 0; k < g.messages_; ++k) {
        auto first = g.msg_slots_.begin() + g.msg_offset_[k];
        auto last = g.msg_slots_.begin() + g.msg_offset_[k + 1];
        if (first == last)
            throw ConfigurationError("message " + std::to_string(k) + " occupies no slot");
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw ConfigurationError("message " + std::to_string(k) + " repeats a slot");
        if (*first < 0 || *(last - 1) >= slots)
            throw ConfigurationError("message " + std::to_string(k) + " has a slot outside [0, M)");
    }

    // counting sort into the inverse adjacency; messages land in ascending order
    g.slot_offset_.assign(static_cast<std::size_t>(slots) + 1, 0);
    for (int s : g.msg_slots_)
        ++g.slot_offset_[s + 1];
    for (int j = 0; j < slots; ++j)
        g.slot_offset_[j + 1] += g.slot_offset_[j];
    g.slot_msgs_.resize(g.msg_slots_.size());
    std::vector<int> fill(g.slot_offset_.begin(), g.slot_offset_.end() - 1);
    for (int k = 0; k < g.messages_; ++k)
        for (int s : g.slots_of(k))
            g.slot_msgs_[fill[s]++] = k;
    return g;
}

FrameGraph build_frame(int messages, int slots, const DegreeDistribution& dist, Rng& rng)
{
    if (messages < 1)
        throw ConfigurationError("frame needs at least one message");
    if (dist.max_degree() > slots)
        throw ConfigurationError("max degree " + std::to_string(dist.max_degree()) +
                                 " exceeds slot count " + std::to_string(slots));

    std::vector<int> perm(static_cast<std::size_t>(slots));
    for (int j = 0; j < slots; ++j)
        perm[j] = j;

    std::vector<int> offsets;
    offsets.reserve(static_cast<std::size_t>(messages) + 1);
    offsets.push_back(0);
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(messages * (dist.mean() + 1.0)));
    std::vector<int> picks;
    for (int k = 0; k < messages; ++k) {
        const int degree = dist.sample(rng);
        picks.resize(static_cast<std::size_t>(degree));
        // partial Fisher-Yates over the slot indices
        for (int t = 0; t < degree; ++t) {
            const int pick = std::uniform_int_distribution<int>(t, slots - 1)(rng);
            std::swap(perm[t], perm[pick]);
            picks[t] = pick;
            flat.push_back(perm[t]);
        }
        // undo in reverse so the next message starts from the identity again
        for (int t = degree - 1; t >= 0; --t)
            std::swap(perm[t], perm[picks[t]]);
        offsets.push_back(static_cast<int>(flat.size()));
    }
    return FrameGraph::from_csr(slots, std::move(offsets), std::move(flat));
}

void write_edge_list(std::ostream& out, const FrameGraph& graph)
{
    out << "# messages=" << graph.messages() << " slots=" << graph.slots() << '\n';
    for (int k = 0; k < graph.messages(); ++k)
        for (int s : graph.slots_of(k))
            out << k << '\t' << s << '\n';
}

FrameGraph read_edge_list(std::istream& in)
{
    int messages = -1;
    int slots = -1;
    std::vector<std::vector<int>> adjacency;
    int max_slot = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            std::istringstream hs(line.substr(1));
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("messages=", 0) == 0)
                    messages = std::stoi(tok.substr(9));
                else if (tok.rfind("slots=", 0) == 0)
                    slots = std::stoi(tok.substr(6));
            }
            continue;
        }
        std::istringstream ls(line);
        int k = -1;
        int s = -1;
        if (!(ls >> k >> s) || k < 0 || s < 0)
            throw ConfigurationError("edge list line " + std::to_string(lineno) + ": expected 'message<TAB>slot'");
        if (static_cast<std::size_t>(k) >= adjacency.size())
            adjacency.resize(static_cast<std::size_t>(k) + 1);
        adjacency[k].push_back(s);
        max_slot = std::max(max_slot, s);
    }
    if (messages >= 0) {
        if (static_cast<int>(adjacency.size()) > messages)
            throw ConfigurationError("edge list references a message beyond the header count");
        adjacency.resize(static_cast<std::size_t>(messages));
    }
    if (slots < 0)
        slots = max_slot + 1;
    if (adjacency.empty())
        throw ConfigurationError("edge list contains no messages");
    return FrameGraph::from_adjacency(slots, adjacency);
}

ResidualState::ResidualState(const FrameGraph& graph, std::span<const double> energy)
    : graph_(&graph),
      energy_(energy),
      decoded_(static_cast<std::size_t>(graph.messages()), 0),
      slot_degree_(static_cast<std::size_t>(graph.slots())),
      slot_interference_(static_cast<std::size_t>(graph.slots())),
      remaining_(graph.messages())
{
    if (energy.size() != static_cast<std::size_t>(graph.messages()))
        throw std::invalid_argument("one energy per message required");
    for (int j = 0; j < graph.slots(); ++j) {
        slot_degree_[j] = graph.slot_degree(j);
        slot_interference_[j] = slot_energy(j);
    }
}

double ResidualState::slot_energy(int slot) const
{
    double sum = 0.0;
    for (int k : graph_->messages_in(slot))
        if (!decoded_[k])
            sum += energy_[k];
    return sum;
}

void ResidualState::peel(int msg)
{
    if (decoded_[msg])
        throw std::logic_error("message " + std::to_string(msg) + " peeled twice");
    decoded_[msg] = 1;
    --remaining_;
    for (int s : graph_->slots_of(msg)) {
        --slot_degree_[s];
        slot_interference_[s] = slot_degree_[s] == 0 ? 0.0 : slot_energy(s);
    }
}

std::vector<int> ResidualState::degree_one_slots() const
{
    std::vector<int> out;
    for (int j = 0; j < graph_->slots(); ++j)
        if (slot_degree_[j] == 1)
            out.push_back(j);
    return out;
}

int ResidualState::sole_message(int slot) const
{
    for (int k : graph_->messages_in(slot))
        if (!decoded_[k])
            return k;
    return -1;
}

} // namespace irsa
