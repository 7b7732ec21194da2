#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sofic {

// Fixed-universe dynamic bitset for vertex subsets and relation rows.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int i) { w_[static_cast<std::size_t>(i) >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (auto x : w_) c += __builtin_popcountll(x);
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const Bitset& o) const { return w_ < o.w_; }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : w_) {
            h ^= std::hash<std::uint64_t>{}(x);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

struct BitsetPairHash {
    std::size_t operator()(const std::pair<Bitset, Bitset>& p) const {
        return p.first.hash() * 31 + p.second.hash();
    }
};

}  // namespace sofic
