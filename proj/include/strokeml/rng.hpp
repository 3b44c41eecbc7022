#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strokeml {

// Deterministic, labeled random streams. Every stochastic component of the
// pipeline draws from a child stream derived from (master_seed, label), so
// identical configs reproduce identical results regardless of scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string label)
        : seed_(seed), label_(std::move(label)) {
        if (label_.empty()) {
            throw std::invalid_argument("RngStream: label must be non-empty");
        }
        engine_.seed(mix(seed_, label_));
    }

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1): 53-bit mantissa construction, identical everywhere.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform index in [0, n) by rejection.
    std::size_t next_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("RngStream: next_index(0)");
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<std::size_t>(x % bound);
    }

    // Standard normal via Box-Muller (cached spare).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Fisher-Yates over indices 0..n-1.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_index(i)]);
        }
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t mix(std::uint64_t seed, std::string_view label) {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the label
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return splitmix(splitmix(seed) ^ splitmix(h));
    }

    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Child stream from a master seed and a purpose label. Distinct labels give
// independent draw sequences; identical (seed, label) pairs repeat exactly.
inline RngStream derive_stream(std::uint64_t master_seed, const std::string& label) {
    return RngStream(master_seed, label);
}

}  // namespace strokeml
