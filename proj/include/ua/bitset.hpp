#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace ua {

// Fixed-size dense bitset sized at construction. Used for subsets of A^n.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    // Returns true if the bit was newly set.
    bool set(std::size_t i) {
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (w & m) return false;
        w |= m;
        ++count_;
        return true;
    }

    void reset(std::size_t i) {
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (w & m) {
            w &= ~m;
            --count_;
        }
    }

    std::size_t count() const { return count_; }
    bool full() const { return count_ == n_; }

    bool operator==(const Bitset& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }

    static Bitset all(std::size_t n) {
        Bitset b(n);
        for (std::size_t i = 0; i < n; ++i) b.set(i);
        return b;
    }

private:
    std::size_t n_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace ua
