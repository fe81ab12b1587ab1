#include <bit>
#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace cogsim::simd {

using namespace detail;

double exp_portable(double x) noexcept {
    if (std::isnan(x)) return x;
    if (x > kExpMax) return std::numeric_limits<double>::infinity();
    if (x < kExpMin) return 0.0;
    const double px = std::floor(kLog2e * x + 0.5);
    const auto n = static_cast<std::int64_t>(px);
    x = x - px * kLn2Hi;
    x = x - px * kLn2Lo;
    const double xx = x * x;
    const double p = x * ((kExpP0 * xx + kExpP1) * xx + kExpP2);
    const double q = ((kExpQ0 * xx + kExpQ1) * xx + kExpQ2) * xx + kExpQ3;
    const double r = 1.0 + 2.0 * (p / (q - p));
    const double scale = std::bit_cast<double>(static_cast<std::uint64_t>(n + 1023) << 52);
    return r * scale;
}

namespace {

void in_range_scalar(double x0, double y0, const double* xs, const double* ys, std::size_t n,
                     double range_sq, std::uint8_t* out) {
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = xs[k] - x0;
        const double dy = ys[k] - y0;
        out[k] = (dx * dx + dy * dy) <= range_sq ? 1 : 0;
    }
}

std::size_t expired_scalar(double now, double f_min, const double* last,
                           const std::uint32_t* popularity, std::size_t n, std::uint8_t* out) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double elapsed = now - last[k];
        const double limit = static_cast<double>(popularity[k]) * f_min;
        out[k] = elapsed >= limit ? 1 : 0;
        count += out[k];
    }
    return count;
}

inline double decay_one(double now, double gamma, double last, std::uint32_t popularity) {
    const double beta = gamma / static_cast<double>(popularity);
    const double elapsed = now - last;
    return exp_portable(-(beta * elapsed));
}

// Four interleaved partial sums reduced as (a0 + a2) + (a1 + a3), then the
// tail in order. This is the summation tree of the AVX2 variant.
double decay_sum_scalar(double now, double gamma, const double* last,
                        const std::uint32_t* popularity, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            acc[j] += decay_one(now, gamma, last[k + j], popularity[k + j]);
        }
    }
    double total = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; k < n; ++k) total += decay_one(now, gamma, last[k], popularity[k]);
    return total;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &in_range_scalar, &expired_scalar, &decay_sum_scalar};
}

}  // namespace cogsim::simd
