// Compiled with -mavx2 (no FMA). Only reached after a runtime CPU check.
#include "alphagate/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace alphagate::kernels {

namespace {

void shift_mix(std::span<const double> shift, double common, double scale,
               std::span<const double> noise, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d vcommon = _mm256_set1_pd(common);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mixed =
            _mm256_add_pd(vcommon, _mm256_mul_pd(vscale, _mm256_loadu_pd(noise.data() + i)));
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(_mm256_loadu_pd(shift.data() + i), mixed));
    }
    for (; i < n; ++i) out[i] = shift[i] + (common + scale * noise[i]);
}

void contrast(std::span<const double> mean, double noise_scale, std::span<const double> noise,
              double control, double inv_se, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d vscale = _mm256_set1_pd(noise_scale);
    const __m256d vcontrol = _mm256_set1_pd(control);
    const __m256d vinv = _mm256_set1_pd(inv_se);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_add_pd(_mm256_loadu_pd(mean.data() + i),
                                  _mm256_mul_pd(vscale, _mm256_loadu_pd(noise.data() + i)));
        x = _mm256_mul_pd(_mm256_sub_pd(x, vcontrol), vinv);
        _mm256_storeu_pd(out.data() + i, x);
    }
    for (; i < n; ++i) out[i] = ((mean[i] + noise_scale * noise[i]) - control) * inv_se;
}

std::size_t mark_at_or_below(std::span<const double> values, double threshold,
                             std::span<std::uint8_t> mask) {
    const std::size_t n = values.size();
    const __m256d vt = _mm256_set1_pd(threshold);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const auto bits = static_cast<unsigned>(
            _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(values.data() + i), vt, _CMP_LE_OQ)));
        mask[i] = bits & 1u;
        mask[i + 1] = (bits >> 1) & 1u;
        mask[i + 2] = (bits >> 2) & 1u;
        mask[i + 3] = (bits >> 3) & 1u;
        count += static_cast<std::size_t>(std::popcount(bits));
    }
    for (; i < n; ++i) {
        const bool hit = values[i] <= threshold;
        mask[i] = hit ? 1 : 0;
        count += hit;
    }
    return count;
}

std::size_t count_both(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    const std::size_t n = a.size();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_and_si256(va, vb),
                                                    _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::size_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) count += (a[i] & b[i]);
    return count;
}

constexpr Kernels kAvx2{Backend::Avx2, shift_mix, contrast, mark_at_or_below, count_both};

} // namespace

namespace detail {
const Kernels* avx2_table() noexcept { return &kAvx2; }
} // namespace detail

} // namespace alphagate::kernels
