#pragma once

namespace alphagate {

enum class Sides { OneSided, TwoSided };

/// Standard normal CDF via erfc; absolute error well below 1e-12 and full
/// relative precision in the lower tail.
double normal_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x), evaluated without cancellation.
double normal_sf(double x) noexcept;

/// Inverse of normal_cdf on (0, 1) (Wichura's AS241, ~1e-16 relative).
/// Returns -inf/+inf at 0/1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

/// One-sided: 1 - Phi(z). Two-sided: 2(1 - Phi(|z|)), clamped to [0, 1].
double p_from_z(double z, Sides sides) noexcept;

} // namespace alphagate
