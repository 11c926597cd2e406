#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fsl/common/report.hpp"

namespace fsl {

enum class MeasureMethod { kClosedForm, kGrid };

/// Lebesgue measure of { xi_1 in [2^k, 2^{k+1}] : |xi| in [2^k, 2^{k+1}],
/// |tau + |xi|^{2s}| <= 2^j } with |xi|^2 = xi_1^2 + |xi'|^2 (positive branch).
/// kClosedForm intersects the explicit xi_1 intervals; kGrid counts midpoints
/// of `grid_points` cells of [2^k, 2^{k+1}].
double sigma_measure(double k, double j, double xi_perp_normsq, double tau, double s,
                     MeasureMethod method = MeasureMethod::kClosedForm, long grid_points = 1 << 20);

/// min(2^k, 2^{-k(2s-1)} 2^j)
double sigma_bound(double k, double j, double s);

/// sup over sampled (|xi'|^2, tau) of sigma_measure / sigma_bound for every
/// integer k in [k_lo, k_hi], integer j in [0, 2sk + 2], and s in `orders`.
RatioReport sigma_sweep(const std::vector<double>& orders, int k_lo, int k_hi, int samples = 64);

/// |I(x, t)| / min(1, (1 + t) |x_1|^{-2}) in the regime |x_1| >= C_s t, for the
/// ball cutoff profile 1 on B(0, 1/2), supported in B(0, 1).
RatioReport twointegrals_check(int n, double s, int samples, std::uint64_t seed = 3,
                               double c_s = 4.0);

/// Plain CSV table writer (header row then values), written atomically.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace fsl
