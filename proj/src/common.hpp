#ifndef SBRIDGE_COMMON_HPP
#define SBRIDGE_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sbridge {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// All recoverable failures carry a short machine-readable code ("GridTooSmall",
// "DegenerateMarginal", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

inline double log_sum_exp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Splits [0, n) into contiguous chunks, one worker thread per chunk. Chunks
// are disjoint, so deterministic as long as fn only writes its own range.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::int64_t nthreads = std::min<std::int64_t>(hw, std::max<std::int64_t>(1, n / 1024));
    if (nthreads <= 1) {
        fn(std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::int64_t chunk = (n + nthreads - 1) / nthreads;
    for (std::int64_t t = 0; t < nthreads; ++t) {
        const std::int64_t b = t * chunk;
        const std::int64_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace sbridge

#endif
