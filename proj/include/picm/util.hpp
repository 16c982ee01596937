#ifndef PICM_UTIL_HPP
#define PICM_UTIL_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace picm {

// Thrown when a configured budget (lattice nodes, extension degree,
// enumeration size) is exhausted. Callers treat this as "inconclusive",
// never as a definite negative.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic RNG. All randomness in the library flows through this so
// that runs are reproducible from a single seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed ^ 0xd6e8feb86659fd93ULL) {
        // warm up so that nearby seeds diverge immediately
        next();
        next();
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw invalid_input("Rng::below(0)");
        // rejection sampling to avoid modulo bias
        std::uint64_t lim = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= lim);
        return v % n;
    }

private:
    std::uint64_t state_;
};

// Derive a child seed from a parent seed and a context label. Used to give
// every (prime, chunk, purpose) its own stream so worker count and
// interleaving cannot perturb results.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = seed ^ 0x51ed270b7a2cca13ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
        h = splitmix64(h);
    }
    return h;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline std::uint64_t submod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Run fn(i) for i in [0, n) across `workers` threads. Results must be
// written to per-index slots by the caller; iteration order inside a worker
// is ascending so per-index work stays deterministic.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t per = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * per, hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace picm

#endif
