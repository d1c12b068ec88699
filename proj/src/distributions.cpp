#include "irsa/distributions.hpp"

#include "irsa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace irsa {

DegreeDistribution DegreeDistribution::from_atoms(std::string name, std::vector<DegreeAtom> atoms)
{
    if (atoms.empty())
        throw InvalidParameter("degree distribution '" + name + "' has no atoms");

    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto& a = atoms[i];
        if (a.degree < 1)
            throw InvalidParameter("degree distribution '" + name + "': degree must be >= 1");
        if (i > 0 && a.degree <= atoms[i - 1].degree)
            throw InvalidParameter("degree distribution '" + name +
                                   "': degrees must be distinct and ascending");
        if (!(a.probability >= 0.0 && a.probability <= 1.0))
            throw InvalidParameter("degree distribution '" + name +
                                   "': probabilities must lie in [0, 1]");
        total += a.probability;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw InvalidParameter("degree distribution '" + name + "': probabilities sum to " +
                               std::to_string(total));

    DegreeDistribution d;
    d.name_ = std::move(name);
    d.atoms_ = std::move(atoms);

    d.cumulative_.resize(d.atoms_.size());
    double acc = 0.0;
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
        const double p = d.atoms_[i].probability;
        const double k = d.atoms_[i].degree;
        acc += p;
        d.cumulative_[i] = acc;
        mean += k * p;
        second += k * k * p;
    }
    // absorb rounding so that every u in [0, 1) lands on an atom
    d.cumulative_.back() = 1.0;
    d.mean_ = mean;
    d.variance_ = std::max(0.0, second - mean * mean);
    return d;
}

double DegreeDistribution::probability(int degree) const
{
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), degree,
                               [](const DegreeAtom& a, int d) { return a.degree < d; });
    return (it != atoms_.end() && it->degree == degree) ? it->probability : 0.0;
}

int DegreeDistribution::sample(Rng& rng) const
{
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end())
        --it;
    return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].degree;
}

// Atoms are evaluated from their closed forms 1/(i(i-1)) etc., each a
// correctly rounded double of the exact rational.
static double inv_pair(int i)
{
    return 1.0 / (static_cast<double>(i) * static_cast<double>(i - 1));
}

DegreeDistribution ideal_soliton(int y)
{
    if (y < 2)
        throw InvalidParameter("ideal soliton requires Y >= 2, got " + std::to_string(y));
    std::vector<DegreeAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(y));
    atoms.push_back({1, 1.0 / y});
    for (int i = 2; i <= y; ++i)
        atoms.push_back({i, inv_pair(i)});
    return DegreeDistribution::from_atoms("ideal_soliton", std::move(atoms));
}

DegreeDistribution modified_soliton(int y)
{
    if (y < 2)
        throw InvalidParameter("modified soliton requires Y >= 2, got " + std::to_string(y));
    const double lift = inv_pair(y);
    std::vector<DegreeAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(y - 1));
    for (int i = 2; i <= y; ++i)
        atoms.push_back({i, inv_pair(i) + lift});
    return DegreeDistribution::from_atoms("modified_soliton", std::move(atoms));
}

DegreeDistribution fixed_l3()
{
    return DegreeDistribution::from_atoms("l3", {
        {2, 0.4977}, {3, 0.2207}, {4, 0.0381}, {5, 0.0756},
        {6, 0.0398}, {7, 0.0009}, {8, 0.0088}, {9, 0.0068},
        {11, 0.0030}, {14, 0.0429}, {15, 0.0081}, {16, 0.0576},
    });
}

double avg_degree(const DegreeDistribution& dist)
{
    return dist.mean();
}

int sample_degree(const DegreeDistribution& dist, Rng& rng)
{
    return dist.sample(rng);
}

} // namespace irsa
