#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace epoly {

// Dynamic bitset sized for vertex sets of small polytopes (a few hundred bits).
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int capacity() const { return nbits_; }

    void set(int i) { w_[size_t(i) >> 6] |= (uint64_t(1) << (i & 63)); }
    void reset(int i) { w_[size_t(i) >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w_[size_t(i) >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += __builtin_popcountll(x);
        return c;
    }
    bool empty() const {
        for (uint64_t x : w_)
            if (x) return false;
        return true;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(nbits_);
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
        return r;
    }
    Bitset operator|(const Bitset& o) const {
        Bitset r(nbits_);
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
        return r;
    }
    bool subset_of(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    bool intersects(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    bool operator<(const Bitset& o) const { return w_ < o.w_; }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (int i = 0; i < nbits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    static Bitset of(int nbits, const std::vector<int>& members) {
        Bitset b(nbits);
        for (int i : members) b.set(i);
        return b;
    }
    static Bitset full(int nbits) {
        Bitset b(nbits);
        for (int i = 0; i < nbits; ++i) b.set(i);
        return b;
    }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        for (uint64_t x : w_) {
            h ^= size_t(x);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int nbits_;
    std::vector<uint64_t> w_;
};

struct BitsetHash {
    size_t operator()(const Bitset& b) const { return b.hash(); }
};

} // namespace epoly
