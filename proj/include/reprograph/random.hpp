#pragma once

// Deterministic, splittable randomness.
//
// Every random quantity in the library is drawn from a StreamKey: a master
// seed plus an ordered list of 64-bit tags (generation index, rule id,
// vertex/edge ids, replicate index, ...).  The tag path is folded into a
// 128-bit digest as it is appended, and draws are produced counter-style
// from the digest, so a draw depends only on (master_seed, path, counter)
// and never on evaluation order or thread count.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace reprograph {

namespace detail {

// splitmix64 finalizer; bijective on u64 with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kLane0  = 0x243f6a8885a308d3ULL;
constexpr std::uint64_t kLane1  = 0x13198a2e03707344ULL;

} // namespace detail

/// Identifies one independent random stream. Value type; cheap to copy.
class StreamKey {
public:
    StreamKey() : StreamKey(0) {}

    explicit StreamKey(std::uint64_t master_seed)
        : master_seed_(master_seed),
          s0_(detail::mix64(master_seed ^ detail::kLane0)),
          s1_(detail::mix64(master_seed ^ detail::kLane1)) {}

    /// Child key with one extra tag appended to the path.
    [[nodiscard]] StreamKey child(std::uint64_t tag) const noexcept {
        StreamKey k = *this;
        k.absorb(tag);
        return k;
    }

    /// Child key with several tags appended, in order.
    [[nodiscard]] StreamKey child(std::initializer_list<std::uint64_t> tags) const noexcept {
        StreamKey k = *this;
        for (std::uint64_t t : tags) k.absorb(t);
        return k;
    }

    [[nodiscard]] StreamKey child(const std::vector<std::uint64_t>& tags) const noexcept {
        StreamKey k = *this;
        for (std::uint64_t t : tags) k.absorb(t);
        return k;
    }

    /// i-th 64-bit word of this stream. Pure function of (key, i).
    [[nodiscard]] std::uint64_t word(std::uint64_t i) const noexcept {
        const std::uint64_t a = detail::mix64(s0_ + i * detail::kGolden);
        const std::uint64_t b = detail::mix64(s1_ ^ (i + detail::kLane1));
        return a ^ b;
    }

    /// i-th uniform double in [0,1) with 53-bit resolution.
    [[nodiscard]] double unit(std::uint64_t i) const noexcept {
        return static_cast<double>(word(i) >> 11) * 0x1.0p-53;
    }

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }

    friend bool operator==(const StreamKey& a, const StreamKey& b) noexcept {
        return a.master_seed_ == b.master_seed_ && a.s0_ == b.s0_ && a.s1_ == b.s1_;
    }

private:
    void absorb(std::uint64_t tag) noexcept {
        s0_ = detail::mix64(s0_ ^ (tag + detail::kLane0));
        s1_ = detail::mix64(s1_ ^ (tag * detail::kGolden + detail::kLane1));
    }

    std::uint64_t master_seed_;
    std::uint64_t s0_, s1_;
};

/// Appends extra_tags to the key's path; empty list returns the key unchanged.
inline StreamKey derive_stream(const StreamKey& key, const std::vector<std::uint64_t>& extra_tags) {
    return key.child(extra_tags);
}

inline void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
}

/// One Bernoulli(p) draw from the key (counter 0).
inline int bernoulli(const StreamKey& key, double p) {
    require_probability(p, "bernoulli");
    if (p <= 0.0) return 0;
    if (p >= 1.0) return 1;
    return key.unit(0) < p ? 1 : 0;
}

/// Binomial(n, p) as a sum of n indexed Bernoulli trials on the key's
/// counters 0..n-1.  Two calls with the same key and different n share the
/// first min(n, n') trials, so the result is non-decreasing in n path by
/// path; the degree-chain coupling relies on this.
inline std::uint64_t binomial(const StreamKey& key, std::uint64_t n, double p) {
    require_probability(p, "binomial");
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        count += key.unit(i) < p ? 1u : 0u;
    return count;
}

/// Sequential cursor over a stream, for code that wants draw-after-draw
/// semantics instead of explicit counters.
class Stream {
public:
    explicit Stream(StreamKey key) : key_(key) {}

    std::uint64_t next_u64() { return key_.word(counter_++); }
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    int next_bernoulli(double p) {
        require_probability(p, "bernoulli");
        if (p <= 0.0) { ++counter_; return 0; }
        if (p >= 1.0) { ++counter_; return 1; }
        return next_unit() < p ? 1 : 0;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below: empty range");
        // multiply-shift; bias < 2^-64 per draw, irrelevant at simulation scale
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    StreamKey key_;
    std::uint64_t counter_ = 0;
};

} // namespace reprograph
