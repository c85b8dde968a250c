#include "rotsync/system.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rotsync {

GeneratorSystem::GeneratorSystem(std::vector<Homeo> generators, std::vector<double> nu)
    : generators_(std::make_shared<const std::vector<Homeo>>(std::move(generators))), nu_(std::move(nu))
{
    if (generators_->empty())
        throw std::invalid_argument("generator system needs at least one generator");
    if (nu_.size() != generators_->size())
        throw std::invalid_argument("nu must have one weight per generator");
    for (double w : nu_)
        if (!(w > 0.0))
            throw std::invalid_argument("nu weights must be positive");
    double total = std::accumulate(nu_.begin(), nu_.end(), 0.0);
    if (!(std::abs(total - 1.0) <= 1e-12))
        throw std::invalid_argument("nu must sum to 1");
}

GeneratorSystem::GeneratorSystem(std::vector<Homeo> generators)
    : GeneratorSystem(generators, std::vector<double>(generators.size(), 1.0 / static_cast<double>(generators.size())))
{
}

GeneratorSystem GeneratorSystem::inverted() const
{
    std::vector<Homeo> out;
    out.reserve(size());
    for (const auto& g : generators())
        out.push_back(g.inverse());
    return GeneratorSystem(std::move(out), nu_);
}

GeneratorSystem GeneratorSystem::conjugated_by(const Homeo& h) const
{
    std::vector<Homeo> out;
    out.reserve(size());
    for (const auto& g : generators())
        out.push_back(g.conjugated_by(h));
    return GeneratorSystem(std::move(out), nu_);
}

Homeo compose(const GeneratorSystem& system, const Word& w)
{
    return Homeo::word(system.shared_generators(), w);
}

} // namespace rotsync
