#pragma once

// Data-parallel inner loops of the simulator and the single-step decision
// rules. Every backend must produce results bit-identical to the scalar
// reference: only IEEE add/mul/compare are used, in the same order, and the
// library is built with floating-point contraction disabled.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace alphagate::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view text);

struct Kernels {
    Backend backend;

    /// out[i] = shift[i] + (common + scale * noise[i])
    void (*shift_mix)(std::span<const double> shift, double common, double scale,
                      std::span<const double> noise, std::span<double> out);

    /// out[i] = ((mean[i] + noise_scale * noise[i]) - control) * inv_se
    void (*contrast)(std::span<const double> mean, double noise_scale,
                     std::span<const double> noise, double control, double inv_se,
                     std::span<double> out);

    /// mask[i] = values[i] <= threshold; returns the number of set entries.
    /// NaN never passes.
    std::size_t (*mark_at_or_below)(std::span<const double> values, double threshold,
                                    std::span<std::uint8_t> mask);

    /// Number of positions where both 0/1 masks are set.
    std::size_t (*count_both)(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
};

const Kernels& scalar_kernels() noexcept;

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend backend) noexcept;

/// Throws std::runtime_error when the backend is unavailable.
const Kernels& kernels_for(Backend backend);

/// Widest available backend, detected once.
const Kernels& best_kernels() noexcept;

namespace detail {
const Kernels* avx2_table() noexcept;
}

} // namespace alphagate::kernels
