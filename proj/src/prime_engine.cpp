#include "pcr/prime_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace pcr {

namespace {

// Odd-only bitmap over [lo, hi): word bit j <=> value first_odd + 2j.
// Callers guarantee base covers primes up to sqrt(hi).
struct OddBitmap {
    u64 first_odd;
    u64 count; // number of odd candidates
    std::vector<u64> words;

    bool get(u64 idx) const { return (words[idx >> 6] >> (idx & 63)) & 1; }
};

OddBitmap sieve_odds(u64 lo, u64 hi, const std::vector<u32>& base) {
    OddBitmap bm;
    bm.first_odd = std::max<u64>(lo | 1, 3);
    bm.count = (hi > bm.first_odd) ? (hi - bm.first_odd + 1) / 2 : 0;
    bm.words.assign((bm.count + 63) / 64, ~u64(0));
    if (bm.count == 0) return bm;

    // clear trailing slack bits so popcount-style scans stay honest
    u64 tail = bm.count & 63;
    if (tail) bm.words.back() = (u64(1) << tail) - 1;

    for (u32 p : base) {
        if (p == 2) continue;
        u64 pp = u64(p) * p;
        if (pp >= hi) break;
        u64 start = std::max(pp, ((bm.first_odd + p - 1) / p) * u64(p));
        if ((start & 1) == 0) start += p;
        for (u64 m = start; m < hi; m += 2 * u64(p)) {
            u64 idx = (m - bm.first_odd) / 2;
            bm.words[idx >> 6] &= ~(u64(1) << (idx & 63));
        }
    }
    return bm;
}

template <typename Fn>
void for_each_set(const OddBitmap& bm, Fn&& fn) {
    for (std::size_t w = 0; w < bm.words.size(); ++w) {
        u64 bits = bm.words[w];
        while (bits) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            fn(bm.first_odd + 2 * (64 * u64(w) + u64(b)));
        }
    }
}

// triangular number sum_{k=2}^{v} k, as u128 (v up to 1e10)
u128 tri(u64 v) {
    if (v < 2) return 0;
    return static_cast<u128>(v) * (v + 1) / 2 - 1;
}

struct PiSum {
    u64 pi;
    u128 sum;
};

// Lucy_Hedgehog recurrence over the quotient set {n/1, n/2, ...}:
// simultaneously sieves counts and prime sums in O(n^{3/4}) time,
// O(sqrt n) space.
PiSum lucy_pi_sum(u64 n) {
    if (n < 2) return {0, 0};
    const u64 r = isqrt_u64(n);

    std::vector<u64> lo_cnt(r + 1), hi_cnt(r + 1);
    std::vector<u128> lo_sum(r + 1), hi_sum(r + 1);
    for (u64 v = 1; v <= r; ++v) {
        lo_cnt[v] = v - 1;
        lo_sum[v] = tri(v);
    }
    for (u64 i = 1; i <= r; ++i) {
        u64 v = n / i;
        hi_cnt[i] = v - 1;
        hi_sum[i] = tri(v);
    }

    for (u64 p = 2; p <= r; ++p) {
        if (lo_cnt[p] == lo_cnt[p - 1]) continue; // composite
        const u64 c0 = lo_cnt[p - 1];
        const u128 s0 = lo_sum[p - 1];
        const u64 p2 = p * p;

        const u64 imax = std::min(r, n / p2);
        for (u64 i = 1; i <= imax; ++i) {
            u64 d = i * p;
            u64 cnt;
            u128 sm;
            if (d <= r) {
                cnt = hi_cnt[d];
                sm = hi_sum[d];
            } else {
                u64 w = n / d;
                cnt = lo_cnt[w];
                sm = lo_sum[w];
            }
            hi_cnt[i] -= cnt - c0;
            hi_sum[i] -= static_cast<u128>(p) * (sm - s0);
        }
        for (u64 v = r; v >= p2; --v) {
            u64 w = v / p;
            lo_cnt[v] -= lo_cnt[w] - c0;
            lo_sum[v] -= static_cast<u128>(p) * (lo_sum[w] - s0);
        }
    }
    return {hi_cnt[1], hi_sum[1]};
}

std::vector<u32> simple_sieve(u64 limit) {
    std::vector<u32> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        primes.push_back(static_cast<u32>(i));
        for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return primes;
}

} // namespace

std::vector<u64> SieveSegment::primes() const {
    std::vector<u64> out;
    for (u64 i = 0; i < bits.size(); ++i)
        if (bits[i]) out.push_back(lo + i);
    return out;
}

PrimeEngine::PrimeEngine(EngineConfig cfg) : cfg_(cfg) {
    if (cfg_.segment_size < 1024) throw ConfigError("PrimeEngine: segment_size too small");
    threads_ = cfg_.threads ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
}

const std::vector<u32>& PrimeEngine::base_primes(u64 limit) const {
    std::lock_guard<std::mutex> lock(base_mutex_);
    if (limit > base_limit_) {
        u64 grown = std::max<u64>(limit, 1 << 10);
        base_ = simple_sieve(grown);
        base_limit_ = grown;
    }
    return base_;
}

SieveSegment PrimeEngine::sieve_segment(u64 lo, u64 hi, u64 max_segment) {
    if (!(lo < hi)) throw std::domain_error("sieve_segment: requires lo < hi");
    if (hi - lo > max_segment)
        throw ConfigError("sieve_segment: segment of " + std::to_string(hi - lo) +
                          " exceeds configured maximum " + std::to_string(max_segment));
    SieveSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.bits.assign(hi - lo, false);

    auto base = simple_sieve(isqrt_u64(hi > 0 ? hi - 1 : 0));
    OddBitmap bm = sieve_odds(lo, hi, base);
    for_each_set(bm, [&](u64 p) { seg.bits[p - lo] = true; });
    if (lo <= 2 && 2 < hi) seg.bits[2 - lo] = true;
    return seg;
}

u64 PrimeEngine::validated(double x) const {
    if (std::isnan(x) || x < 0.0) throw std::domain_error("prime query: requires x >= 0");
    if (x > static_cast<double>(cfg_.max_x))
        throw std::out_of_range("prime query: x exceeds configured maximum " +
                                std::to_string(cfg_.max_x));
    return static_cast<u64>(std::floor(x));
}

PrimeCheckpoint PrimeEngine::compute(u64 xi) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(xi);
        if (it != memo_.end()) return it->second;
    }
    PiSum ps = lucy_pi_sum(xi);
    PrimeCheckpoint cp{xi, ps.pi, ps.sum};
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(xi, cp);
    }
    return cp;
}

u64 PrimeEngine::pi_of(double x) const { return compute(validated(x)).pi; }

u128 PrimeEngine::prime_sum_of(double x) const { return compute(validated(x)).prime_sum; }

PrimeCheckpoint PrimeEngine::checkpoint(double x) const { return compute(validated(x)); }

std::vector<PrimeCheckpoint> PrimeEngine::sieve_checkpoints(std::vector<u64> xs) const {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PrimeCheckpoint> out;
    if (xs.empty()) return out;
    if (xs.back() > cfg_.max_x)
        throw std::out_of_range("sieve_checkpoints: x exceeds configured maximum");

    const u64 top = xs.back();
    const auto& base = base_primes(isqrt_u64(top));

    u64 cnt = 0;
    u128 sum = 0;
    std::size_t next = 0;
    // emit checkpoints below 3 before streaming odd primes
    auto emit_until = [&](u64 reached) {
        while (next < xs.size() && xs[next] < reached) {
            out.push_back({xs[next], cnt, sum});
            ++next;
        }
    };
    if (top >= 2) {
        emit_until(2);
        if (next < xs.size()) {
            cnt = 1;
            sum = 2;
        }
    }
    for (u64 lo = 3; lo <= top && next < xs.size(); lo += cfg_.segment_size) {
        u64 hi = std::min(top + 1, lo + cfg_.segment_size);
        OddBitmap bm = sieve_odds(lo, hi, base);
        for_each_set(bm, [&](u64 p) {
            emit_until(p);
            ++cnt;
            sum += p;
        });
    }
    emit_until(top + 1);
    return out;
}

void PrimeEngine::for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) const {
    if (lo >= hi) return;
    if (hi > cfg_.max_x + 1)
        throw std::out_of_range("for_each_prime: range exceeds configured maximum");
    if (lo <= 2 && 2 < hi) fn(2);
    const auto& base = base_primes(isqrt_u64(hi - 1));
    u64 start = std::max<u64>(lo, 3);
    for (u64 s = start; s < hi; s += cfg_.segment_size) {
        u64 e = std::min(hi, s + cfg_.segment_size);
        OddBitmap bm = sieve_odds(s, e, base);
        for_each_set(bm, fn);
    }
}

std::vector<double> PrimeEngine::sum_over_primes_multi(
    u64 lo, u64 hi, std::size_t k, const std::function<void(u64, double*)>& fn) const {
    std::vector<double> total(k, 0.0);
    if (hi <= lo) return total;
    if (hi > cfg_.max_x)
        throw std::out_of_range("sum_over_primes: range exceeds configured maximum");

    // primes p with lo < p <= hi
    const u64 first = lo + 1, last = hi;
    const auto& base = base_primes(isqrt_u64(last));

    const u64 span = last - first + 1;
    const u64 seg = cfg_.segment_size;
    const u64 nseg = (span + seg - 1) / seg;
    std::vector<std::vector<double>> partial(nseg, std::vector<double>(k, 0.0));

    std::atomic<u64> cursor{0};
    auto worker = [&]() {
        std::vector<Kahan> acc(k);
        std::vector<double> vals(k);
        for (;;) {
            u64 i = cursor.fetch_add(1);
            if (i >= nseg) break;
            for (auto& a : acc) a = Kahan{};
            u64 s = first + i * seg;
            u64 e = std::min(last, s + seg - 1);
            if (s <= 2 && 2 <= e) {
                fn(2, vals.data());
                for (std::size_t j = 0; j < k; ++j) acc[j].add(vals[j]);
            }
            OddBitmap bm = sieve_odds(std::max<u64>(s, 3), e + 1, base);
            for_each_set(bm, [&](u64 p) {
                fn(p, vals.data());
                for (std::size_t j = 0; j < k; ++j) acc[j].add(vals[j]);
            });
            for (std::size_t j = 0; j < k; ++j) partial[i][j] = acc[j].value();
        }
    };

    unsigned nts = std::min<u64>(threads_, nseg);
    if (nts <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nts);
        for (unsigned t = 0; t < nts; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // ordered reduction: identical result for any thread count
    std::vector<Kahan> red(k);
    for (u64 i = 0; i < nseg; ++i)
        for (std::size_t j = 0; j < k; ++j) red[j].add(partial[i][j]);
    for (std::size_t j = 0; j < k; ++j) total[j] = red[j].value();
    return total;
}

double PrimeEngine::sum_over_primes(u64 lo, u64 hi,
                                    const std::function<double(u64)>& f) const {
    auto r = sum_over_primes_multi(lo, hi, 1, [&](u64 p, double* out) { out[0] = f(p); });
    return r[0];
}

void PrimeEngine::preload(const std::vector<PrimeCheckpoint>& records) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    for (const auto& r : records) {
        if (r.x <= cfg_.max_x) memo_.emplace(r.x, r);
    }
}

std::vector<PrimeCheckpoint> PrimeEngine::memoized() const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    std::vector<PrimeCheckpoint> out;
    out.reserve(memo_.size());
    for (const auto& [x, cp] : memo_) out.push_back(cp);
    return out;
}

} // namespace pcr
