#include "alphagate/kernels.hpp"

#include <stdexcept>
#include <string>

namespace alphagate::kernels {

#ifndef ALPHAGATE_HAVE_AVX2
namespace detail {
const Kernels* avx2_table() noexcept { return nullptr; }
} // namespace detail
#endif

std::string_view to_string(Backend backend) {
    switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "?";
}

std::optional<Backend> parse_backend(std::string_view text) {
    if (text == "scalar") return Backend::Scalar;
    if (text == "avx2") return Backend::Avx2;
    return std::nullopt;
}

bool available(Backend backend) noexcept {
    switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(ALPHAGATE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

const Kernels& kernels_for(Backend backend) {
    if (!available(backend)) {
        throw std::runtime_error("kernel backend '" + std::string(to_string(backend)) +
                                 "' is not available on this machine");
    }
    if (backend == Backend::Avx2) return *detail::avx2_table();
    return scalar_kernels();
}

const Kernels& best_kernels() noexcept {
    static const Kernels& best =
        available(Backend::Avx2) ? *detail::avx2_table() : scalar_kernels();
    return best;
}

} // namespace alphagate::kernels
