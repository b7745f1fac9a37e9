#pragma once

#include "pcr/common.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace pcr {

// Exact (x, pi(x), sum of primes <= x) triple.
struct PrimeCheckpoint {
    u64 x;
    u64 pi;
    u128 prime_sum;
};

struct SieveSegment {
    u64 lo, hi;             // [lo, hi)
    std::vector<bool> bits; // bits[i] <=> lo + i is prime

    bool is_prime(u64 n) const { return n >= lo && n < hi && bits[n - lo]; }
    std::vector<u64> primes() const;
};

struct EngineConfig {
    u64 max_x = 10'000'000'000ull; // range cap for all queries
    u64 segment_size = u64(1) << 24;
    unsigned threads = 0; // 0 = hardware concurrency
};

// Exact prime counting/summation. Two independent paths:
//   - segmented sieve (enumeration; also drives streaming reductions)
//   - Lucy_Hedgehog sublinear recurrence for pi(x) and sum_{p<=x} p
// Query results are memoized; all public operations are thread-safe.
class PrimeEngine {
public:
    static constexpr u32 kAlgorithmVersion = 1;

    explicit PrimeEngine(EngineConfig cfg = {});

    const EngineConfig& config() const { return cfg_; }

    // Primality bitmap over [lo, hi). Throws ConfigError when the segment
    // exceeds max_segment.
    static SieveSegment sieve_segment(u64 lo, u64 hi, u64 max_segment = u64(1) << 24);

    u64 pi_of(double x) const;
    u128 prime_sum_of(double x) const;
    PrimeCheckpoint checkpoint(double x) const;

    // Sieve-path counterpart of checkpoint(): one streaming pass that
    // accumulates (pi, sum) at each of the requested abscissae.
    std::vector<PrimeCheckpoint> sieve_checkpoints(std::vector<u64> xs) const;

    // Primes in [lo, hi) in increasing order, sequential.
    void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) const;

    // sum of f(p) over primes p with lo < p <= hi, segment-parallel with a
    // deterministic (segment-ordered, compensated) reduction.
    double sum_over_primes(u64 lo, u64 hi, const std::function<double(u64)>& f) const;

    // k simultaneous reductions sharing one sieve pass: fn(p, out) must
    // write k values for prime p into out[0..k).
    std::vector<double> sum_over_primes_multi(u64 lo, u64 hi, std::size_t k,
                                              const std::function<void(u64, double*)>& fn) const;

    // Checkpoint cache interplay: merge previously computed triples in, or
    // snapshot everything memoized so far (sorted by x).
    void preload(const std::vector<PrimeCheckpoint>& records) const;
    std::vector<PrimeCheckpoint> memoized() const;

private:
    u64 validated(double x) const;
    PrimeCheckpoint compute(u64 x) const;
    const std::vector<u32>& base_primes(u64 limit) const;

    EngineConfig cfg_;
    unsigned threads_;
    mutable std::mutex memo_mutex_;
    mutable std::map<u64, PrimeCheckpoint> memo_;
    mutable std::mutex base_mutex_;
    mutable std::vector<u32> base_;
    mutable u64 base_limit_ = 0;
};

} // namespace pcr
