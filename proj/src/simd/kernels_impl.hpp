#pragma once

#include "cogsim/simd/kernels.hpp"

namespace cogsim::simd::detail {

// Constants shared by every exp variant.
inline constexpr double kLog2e = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000009e0;
inline constexpr double kExpMax = 709.0;
inline constexpr double kExpMin = -708.39;

extern const KernelTable scalar_table;
#if defined(__x86_64__)
extern const KernelTable avx2_table;
#endif

}  // namespace cogsim::simd::detail
