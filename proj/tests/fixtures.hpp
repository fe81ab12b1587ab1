#pragma once

#include <utility>
#include <vector>

namespace fixtures {

// Degree samples whose two-sample CvM statistic is 0.157223 (to six places).
inline const std::vector<double> cvm_node = {7, 9, 7, 8, 9, 7, 3, 8, 2, 10, 4, 10,
                                             4, 1, 11, 8, 9, 7, 6, 4, 5, 9, 3, 3};
inline const std::vector<double> cvm_global = {3, 13, 2, 8, 2, 6, 1, 10, 12, 11, 2, 11, 12, 2,
                                               6, 1, 12, 10, 12, 8, 4, 3, 5, 8, 5, 5, 7, 5};
constexpr double cvm_statistic = 0.157223;
constexpr double cvm_pvalue = 0.368298;

// Coverage sampled every 5 s: climbs, touches the final value early, dips,
// then settles at 0.987 from t = 2105 to the end.
inline std::vector<std::pair<double, double>> coverage_series() {
    std::vector<std::pair<double, double>> s;
    for (int t = 0; t <= 25000; t += 5) {
        double c;
        if (t < 1500) c = 0.2 + 0.5 * t / 1500.0;
        else if (t == 1500) c = 0.987;
        else if (t < 2105) c = 0.95;
        else c = 0.987;
        s.emplace_back(t, c);
    }
    return s;
}
constexpr double convergence_value = 0.987;
constexpr double convergence_time = 2105;

}  // namespace fixtures
