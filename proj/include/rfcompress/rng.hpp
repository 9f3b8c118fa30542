#pragma once

#include <cstdint>
#include <vector>

namespace rfc {

// SplitMix64 finalizer. Applied to distinct inputs it yields independent
// high-quality 64-bit values, which is what all sampling here builds on.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and a fixed label.
// Used to split one per-trial seed into frequency / pair / JL / SVM streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t label) {
    return splitmix64(splitmix64(seed) ^ splitmix64(label * 0xD1B54A32D192ED03ull + 1));
}

// Counter-based uniform stream: value at position k is a pure function of
// (seed, k), so consumers may draw positions in any order or in parallel
// and still get a schedule-independent result.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return splitmix64(seed_ + counter * 0x9E3779B97F4A7C15ull);
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so
    // inverse-CDF transforms stay finite.
    double uniform01(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Stateful convenience wrapper over RandomStream for sequential draws
// (shuffles, subsampling). Single-threaded use.
class SequentialRng {
public:
    explicit SequentialRng(std::uint64_t seed) : stream_(seed) {}

    std::uint64_t bits() { return stream_.bits(counter_++); }
    double uniform01() { return stream_.uniform01(counter_++); }

    // Uniform integer in [0, n). Fixed-point multiply keeps the modulo bias
    // below 2^-64 per draw.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(bits()) * n) >> 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t k = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[k]);
        }
    }

private:
    RandomStream stream_;
    std::uint64_t counter_ = 0;
};

// Inverse standard normal CDF. Acklam's rational approximation followed by
// one Halley step against erfc, giving near machine-precision accuracy
// (well below the 1e-9 the quasi-Monte-Carlo path needs).
double inv_normal_cdf(double u);

// Inverse CDF of the Cauchy distribution with the given scale.
double inv_cauchy_cdf(double u, double scale);

// Inverse CDF of the zero-mean Laplace distribution with the given scale.
double inv_laplace_cdf(double u, double scale);

}  // namespace rfc
