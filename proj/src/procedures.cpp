#include "alphagate/procedures.hpp"

#include "alphagate/error_math.hpp"

#include <algorithm>
#include <numeric>

namespace alphagate::procedures {

void Workspace::resize(std::size_t k) {
    order.resize(k);
    thresholds.resize(k);
    reject.resize(k);
}

std::size_t single_step(std::span<const double> p, double threshold, Workspace& ws,
                        const kernels::Kernels& kern) {
    ws.resize(p.size());
    std::fill(ws.thresholds.begin(), ws.thresholds.end(), threshold);
    return kern.mark_at_or_below(p, threshold, ws.reject);
}

namespace {

void sort_ascending(std::span<const double> p, Workspace& ws) {
    std::iota(ws.order.begin(), ws.order.end(), std::size_t{0});
    std::stable_sort(ws.order.begin(), ws.order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
}

// alpha / (m - i + 1) for 1-based rank i.
double holm_threshold(double alpha, std::size_t m, std::size_t rank) {
    return alpha / static_cast<double>(m - rank + 1);
}

// Endpoints are evaluated with the same expressions as the Holm sequence
// so BH dominates Hochberg exactly in floating point.
double bh_threshold(double q, std::size_t m, std::size_t rank) {
    if (rank == m) return q;
    if (rank == 1) return q / static_cast<double>(m);
    return static_cast<double>(rank) * q / static_cast<double>(m);
}

template <typename Threshold>
std::size_t step_down(std::span<const double> p, Workspace& ws, Threshold threshold) {
    const std::size_t m = p.size();
    sort_ascending(p, ws);
    std::fill(ws.reject.begin(), ws.reject.end(), std::uint8_t{0});
    std::size_t rejected = 0;
    bool stopped = false;
    for (std::size_t r = 1; r <= m; ++r) {
        const std::size_t idx = ws.order[r - 1];
        ws.thresholds[idx] = threshold(r);
        if (!stopped && p[idx] <= ws.thresholds[idx]) {
            ws.reject[idx] = 1;
            ++rejected;
        } else {
            stopped = true;
        }
    }
    return rejected;
}

template <typename Threshold>
std::size_t step_up(std::span<const double> p, Workspace& ws, Threshold threshold) {
    const std::size_t m = p.size();
    sort_ascending(p, ws);
    std::fill(ws.reject.begin(), ws.reject.end(), std::uint8_t{0});
    std::size_t cutoff = 0;
    for (std::size_t r = m; r >= 1; --r) {
        const std::size_t idx = ws.order[r - 1];
        ws.thresholds[idx] = threshold(r);
        if (cutoff == 0 && p[idx] <= ws.thresholds[idx]) cutoff = r;
    }
    for (std::size_t r = 1; r <= cutoff; ++r) ws.reject[ws.order[r - 1]] = 1;
    return cutoff;
}

} // namespace

std::size_t run(std::span<const double> p, Method method, double alpha, Workspace& ws,
                const kernels::Kernels& kern) {
    const std::size_t m = p.size();
    ws.resize(m);
    if (m == 0) return 0;
    switch (method) {
    case Method::None: return single_step(p, alpha, ws, kern);
    case Method::Bonferroni: return single_step(p, bonferroni_adjust(alpha, m), ws, kern);
    case Method::Sidak: return single_step(p, sidak_adjust(alpha, m), ws, kern);
    case Method::Holm:
        return step_down(p, ws, [&](std::size_t r) { return holm_threshold(alpha, m, r); });
    case Method::Hochberg:
        return step_up(p, ws, [&](std::size_t r) { return holm_threshold(alpha, m, r); });
    case Method::BenjaminiHochberg:
        return step_up(p, ws, [&](std::size_t r) { return bh_threshold(alpha, m, r); });
    }
    return 0;
}

} // namespace alphagate::procedures
