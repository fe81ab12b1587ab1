#pragma once

// Data-parallel inner loops of the simulator.
//
// Each kernel has a scalar reference and, on x86-64, an AVX2 variant. The
// variant is chosen once at runtime from CPUID (override with the environment
// variable COGSIM_SIMD=scalar|avx2). Both variants perform the same IEEE
// operations in the same order, so results are bit-identical; the equivalence
// tests hold them to that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cogsim::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Whether the running CPU can execute `isa`.
bool isa_supported(Isa isa) noexcept;

/// Currently selected instruction set.
Isa active_isa() noexcept;

/// Forces a variant (tests and benchmarks). Returns false, leaving the
/// selection unchanged, if the CPU lacks support.
bool select_isa(Isa isa) noexcept;

/// Flags out[k] = 1 when point (xs[k], ys[k]) lies within sqrt(range_sq) of
/// (x0, y0), else 0. All spans have equal length.
using InRangeFn = void (*)(double x0, double y0, const double* xs, const double* ys,
                           std::size_t n, double range_sq, std::uint8_t* out);

/// Flags out[k] = 1 when an edge is forgotten at `now`:
/// (now - last[k]) >= popularity[k] * f_min. Returns the number of flagged
/// edges.
using ExpiredFn = std::size_t (*)(double now, double f_min, const double* last,
                                  const std::uint32_t* popularity, std::size_t n,
                                  std::uint8_t* out);

/// Sum over k of exp(-(gamma / popularity[k]) * (now - last[k])), using the
/// library's portable exponential (see exp_portable).
using DecaySumFn = double (*)(double now, double gamma, const double* last,
                              const std::uint32_t* popularity, std::size_t n);

struct KernelTable {
    Isa isa;
    InRangeFn in_range;
    ExpiredFn expired;
    DecaySumFn decay_sum;
};

/// Kernel table for a specific ISA (must be supported).
const KernelTable& kernels_for(Isa isa) noexcept;

/// Kernel table for the active ISA.
const KernelTable& kernels() noexcept;

/// exp(x) by Cody-Waite range reduction and a (2,3) Pade approximant, with
/// the exact operation sequence used by the vector kernels. Within 2 ulp of
/// std::exp over the domain the simulator uses (x <= 0).
double exp_portable(double x) noexcept;

// Convenience wrappers over the active table.

inline void in_range(double x0, double y0, std::span<const double> xs,
                     std::span<const double> ys, double range_sq, std::span<std::uint8_t> out) {
    kernels().in_range(x0, y0, xs.data(), ys.data(), xs.size(), range_sq, out.data());
}

inline std::size_t expired(double now, double f_min, std::span<const double> last,
                           std::span<const std::uint32_t> popularity,
                           std::span<std::uint8_t> out) {
    return kernels().expired(now, f_min, last.data(), popularity.data(), last.size(), out.data());
}

inline double decay_sum(double now, double gamma, std::span<const double> last,
                        std::span<const std::uint32_t> popularity) {
    return kernels().decay_sum(now, gamma, last.data(), popularity.data(), last.size());
}

}  // namespace cogsim::simd
