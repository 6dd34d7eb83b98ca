#include "alphagate/kernels.hpp"

namespace alphagate::kernels {

namespace {

void shift_mix(std::span<const double> shift, double common, double scale,
               std::span<const double> noise, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = shift[i] + (common + scale * noise[i]);
    }
}

void contrast(std::span<const double> mean, double noise_scale, std::span<const double> noise,
              double control, double inv_se, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = ((mean[i] + noise_scale * noise[i]) - control) * inv_se;
    }
}

std::size_t mark_at_or_below(std::span<const double> values, double threshold,
                             std::span<std::uint8_t> mask) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const bool hit = values[i] <= threshold;
        mask[i] = hit ? 1 : 0;
        count += hit;
    }
    return count;
}

std::size_t count_both(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) count += (a[i] & b[i]);
    return count;
}

constexpr Kernels kScalar{Backend::Scalar, shift_mix, contrast, mark_at_or_below, count_both};

} // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

} // namespace alphagate::kernels
