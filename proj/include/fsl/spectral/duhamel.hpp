#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "fsl/spectral/field.hpp"

namespace fsl {

enum class TimeRule { kTrapezoid, kSimpson };

std::string time_rule_name(TimeRule rule);
TimeRule time_rule_from_name(const std::string& name);

// Frame index with t = 0; throws InvalidArgument if no frame sits at t = 0.
std::size_t origin_frame(const Trajectory& u);

// e^{i t D^{2s}} u0 sampled at t0 + f dt.
Trajectory free_evolution(const Field& u0, double t0, double dt, std::size_t frames, double s);

/// -i cutoff(t) int_0^t e^{i(t - t') D^{2s}} F(t') dt' on the frame lattice,
/// integrated in the interaction picture from the t = 0 frame outwards (signed
/// for t < 0). The value at t = 0 is exactly zero.
Trajectory duhamel_term(const Trajectory& F, double s, const std::function<double(double)>& cutoff,
                        TimeRule rule = TimeRule::kTrapezoid);

}  // namespace fsl
