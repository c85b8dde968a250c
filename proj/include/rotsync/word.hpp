#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace rotsync {

/// Zero-based generator index.
using Letter = std::uint32_t;

/// A positive word in the generators, stored in application order: the word
/// (w0, w1, ..., w_{n-1}) denotes f_{w_{n-1}} o ... o f_{w0}. Concatenation
/// u + v applies u first, then v.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }
    const std::vector<Letter>& letters() const { return letters_; }

    Word prefix(std::size_t n) const
    {
        return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    Word repeated(std::size_t times) const
    {
        std::vector<Letter> out;
        out.reserve(letters_.size() * times);
        for (std::size_t i = 0; i < times; ++i)
            out.insert(out.end(), letters_.begin(), letters_.end());
        return Word(std::move(out));
    }

    friend Word operator+(const Word& first, const Word& second)
    {
        std::vector<Letter> out(first.letters_);
        out.insert(out.end(), second.letters_.begin(), second.letters_.end());
        return Word(std::move(out));
    }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

} // namespace rotsync
