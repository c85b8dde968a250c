#pragma once

#include "rotsync/homeo.hpp"
#include "rotsync/word.hpp"

#include <memory>
#include <vector>

namespace rotsync {

/// k generator homeomorphisms with a probability vector nu on their indices.
class GeneratorSystem {
public:
    /// Throws std::invalid_argument unless k >= 1, nu has k positive entries
    /// and sums to 1 within 1e-12.
    GeneratorSystem(std::vector<Homeo> generators, std::vector<double> nu);

    /// Uniform nu.
    explicit GeneratorSystem(std::vector<Homeo> generators);

    std::size_t size() const { return generators_->size(); }
    const Homeo& generator(std::size_t i) const { return (*generators_)[i]; }
    const std::vector<Homeo>& generators() const { return *generators_; }
    const std::shared_ptr<const std::vector<Homeo>>& shared_generators() const { return generators_; }
    const std::vector<double>& nu() const { return nu_; }

    /// Same nu, every generator replaced by its inverse.
    GeneratorSystem inverted() const;
    /// Same nu, every generator replaced by h o f o h^{-1}.
    GeneratorSystem conjugated_by(const Homeo& h) const;

private:
    std::shared_ptr<const std::vector<Homeo>> generators_;
    std::vector<double> nu_;
};

/// Lazy composition of the system's generator lifts along w (empty word: identity).
/// Throws std::out_of_range for letters >= k.
Homeo compose(const GeneratorSystem& system, const Word& w);

} // namespace rotsync
