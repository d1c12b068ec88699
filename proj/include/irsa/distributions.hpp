#pragma once

#include "irsa/random.hpp"

#include <span>
#include <string>
#include <vector>

namespace irsa {

struct DegreeAtom {
    int degree;
    double probability;

    bool operator==(const DegreeAtom&) const = default;
};

/// Probability mass over repetition degrees (the left degree distribution
/// from the node perspective). Immutable after construction; share freely
/// between threads.
class DegreeDistribution {
public:
    /// Validates and takes ownership of `atoms`. Degrees must be distinct,
    /// ascending and >= 1; probabilities non-negative and summing to 1 within 1e-9.
    /// Throws InvalidParameter otherwise.
    static DegreeDistribution from_atoms(std::string name, std::vector<DegreeAtom> atoms);

    const std::string& name() const { return name_; }
    std::span<const DegreeAtom> atoms() const { return atoms_; }
    int max_degree() const { return atoms_.back().degree; }

    /// Mass at `degree`, zero when the degree is not an atom.
    double probability(int degree) const;

    /// l_avg = sum_i i L_i
    double mean() const { return mean_; }
    double variance() const { return variance_; }

    /// Inverse-CDF draw over the cumulative table.
    int sample(Rng& rng) const;

private:
    DegreeDistribution() = default;

    std::string name_;
    std::vector<DegreeAtom> atoms_;
    std::vector<double> cumulative_;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

/// L_1 = 1/Y, L_i = 1/(i(i-1)) for 2 <= i <= Y.
DegreeDistribution ideal_soliton(int y);

/// L_i = 1/(i(i-1)) + 1/(Y(Y-1)) for 2 <= i <= Y.
DegreeDistribution modified_soliton(int y);

/// Twelve-atom distribution on degrees {2,...,9,11,14,15,16}.
DegreeDistribution fixed_l3();

double avg_degree(const DegreeDistribution& dist);
int sample_degree(const DegreeDistribution& dist, Rng& rng);

} // namespace irsa
