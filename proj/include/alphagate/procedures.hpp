#pragma once

// Index-based rejection procedures over a plain p-value array. The public
// decision functions and the simulator both run through these, so the
// simulated decisions are exactly the ones a user gets from `decide`.
//
// Step constants, for ascending p_(1) <= ... <= p_(m) at level a:
//   Holm      step-down, p_(i) <= a / (m - i + 1)
//   Hochberg  step-up,   p_(i) <= a / (m - i + 1)
//   BH        step-up,   p_(i) <= i * a / m
// Ties in p are ordered by input position (stable sort).

#include "alphagate/hypothesis.hpp"
#include "alphagate/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace alphagate::procedures {

struct Workspace {
    std::vector<std::size_t> order;
    std::vector<double> thresholds;   // effective threshold per input position
    std::vector<std::uint8_t> reject; // 0/1 per input position

    void resize(std::size_t k);
};

/// Compares every p against one threshold (p <= threshold rejects).
std::size_t single_step(std::span<const double> p, double threshold, Workspace& ws,
                        const kernels::Kernels& kern = kernels::best_kernels());

/// Runs `method` at level `alpha`. Method::None is the unadjusted
/// single-step rule. Returns the number of rejections.
std::size_t run(std::span<const double> p, Method method, double alpha, Workspace& ws,
                const kernels::Kernels& kern = kernels::best_kernels());

} // namespace alphagate::procedures
