#include "rotsync/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace rotsync {

LetterSampler::LetterSampler(const std::vector<double>& nu)
{
    if (nu.empty())
        throw std::invalid_argument("empty probability vector");
    double total = 0.0;
    for (double w : nu) {
        total += w;
        cumulative_.push_back(total);
    }
    for (double& c : cumulative_)
        c /= total;
    cumulative_.back() = 1.0;
}

Letter LetterSampler::operator()(Rng& rng) const
{
    if (cumulative_.size() == 1)
        return 0;
    double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<Letter>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                        static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

Word sample_word(const LetterSampler& sampler, std::size_t n, Rng& rng)
{
    std::vector<Letter> letters(n);
    for (auto& l : letters)
        l = sampler(rng);
    return Word(std::move(letters));
}

Word sample_word(const std::vector<double>& nu, std::size_t n, std::uint64_t seed)
{
    LetterSampler sampler(nu);
    Rng rng(seed);
    return sample_word(sampler, n, rng);
}

} // namespace rotsync
