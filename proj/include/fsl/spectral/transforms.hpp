#pragma once

#include <optional>
#include <span>

#include "fsl/spectral/field.hpp"

namespace fsl {

/// Forward kernel e^{-i xi.x} dx^n.
Spectrum dft_forward(const Field& f);
/// Inverse kernel e^{+i xi.x} / L^n; exact inverse of dft_forward.
Field dft_inverse(const Spectrum& F);

/// Space-time transform with kernel e^{-i xi.x + i tau (t - t0)} dx^n dt
/// applied to w(t) u(x, t). With this sign a free wave e^{i(xi.x + w t)}
/// lands at tau = -w, so solutions of (i d_t + D^{2s}) u = 0 sit on
/// tau = -|xi|^{2s}.
SpacetimeSpectrum spacetime_dft(const Trajectory& u, const TimeWindow& window = {});
/// Returns the windowed trajectory w(t) u(x, t).
Trajectory spacetime_idft(const SpacetimeSpectrum& U);

// Applies the temporal window to u (identity for WindowKind::kNone).
Trajectory apply_window(const Trajectory& u, const TimeWindow& window);

enum class ZeroModePolicy { kZeroOut, kReject };

/// |xi|^beta. Throws ZeroModeError for xi = 0, beta < 0 (callers with a
/// zero-mode policy never reach that case). 0^0 = 1.
double fractional_symbol(std::span<const double> xi, double beta);
double fractional_symbol_norm(double abs_xi, double beta);

/// D^beta as a Fourier multiplier. For beta < 0 the zero mode is dropped under
/// kZeroOut; under kReject a zero mode above roundoff throws ZeroModeError.
Field apply_fractional(const Field& f, double beta, ZeroModePolicy policy = ZeroModePolicy::kZeroOut);
Spectrum apply_fractional(const Spectrum& f, double beta,
                          ZeroModePolicy policy = ZeroModePolicy::kZeroOut);

/// e^{i t D^{2s}}, i.e. multiplier e^{i t |xi|^{2s}}.
Field linear_propagate(const Field& f, double t, double s);
Spectrum linear_propagate(const Spectrum& f, double t, double s);

// (sum |f|^2 dx^n)^{1/2}
double l2_norm(const Field& f);
double l2_norm(const Spectrum& F);
// Lattice homogeneous Sobolev seminorm (zero mode excluded).
double hdot_norm(const Field& f, double sigma);
double hdot_norm(const Spectrum& F, double sigma);

// Space-time L^2 norm (sum |u|^2 dx^n dt)^{1/2} and sup_t ||u(t)||_{L^2_x}.
double l2_norm(const Trajectory& u);
double linf_l2_norm(const Trajectory& u);
double l2_norm(const SpacetimeSpectrum& U);

}  // namespace fsl
