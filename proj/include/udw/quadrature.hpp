// quadrature.hpp: globally adaptive 7/15-point Gauss-Kronrod integration on a finite interval

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "udw/types.hpp"

namespace udw {

template <typename Scalar>
struct QuadratureOptions {
    Scalar abs_tol{1e-10};
    Scalar rel_tol{1e-8};
    std::size_t max_intervals{2000};
};

template <typename Scalar>
struct QuadratureResult {
    Scalar value{0};
    Scalar error{0};
    std::size_t intervals{0};
};

namespace detail {

// Abscissae and weights of the 15-point Kronrod extension of the 7-point Gauss
// rule (QUADPACK qk15), given to enough digits for extended precision.
inline constexpr std::array<long double, 8> kKronrodNodes{
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kKronrodWeights{
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<long double, 4> kGaussWeights{
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename Scalar>
struct Panel {
    Scalar a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss-Kronrod panel with the QUADPACK error heuristic, including its
// roundoff floor of 50 machine epsilons times the integral of |f|.
template <typename Scalar, typename F>
Panel<Scalar> kronrod_panel(const F& f, Scalar a, Scalar b) {
    using std::abs;
    using std::pow;
    const Scalar center = (a + b) / 2;
    const Scalar half = (b - a) / 2;
    std::array<Scalar, 15> fv{};
    const Scalar fc = f(center);
    Scalar kronrod = fc * static_cast<Scalar>(kKronrodWeights[7]);
    Scalar gauss = fc * static_cast<Scalar>(kGaussWeights[3]);
    Scalar abs_sum = abs(kronrod);
    for (std::size_t j = 0; j < 7; ++j) {
        const Scalar dx = half * static_cast<Scalar>(kKronrodNodes[j]);
        const Scalar f1 = f(center - dx);
        const Scalar f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        const Scalar wk = static_cast<Scalar>(kKronrodWeights[j]);
        kronrod += wk * (f1 + f2);
        abs_sum += wk * (abs(f1) + abs(f2));
        if (j % 2 == 1) gauss += static_cast<Scalar>(kGaussWeights[j / 2]) * (f1 + f2);
    }
    const Scalar mean = kronrod / 2;
    Scalar asc = static_cast<Scalar>(kKronrodWeights[7]) * abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        asc += static_cast<Scalar>(kKronrodWeights[j]) * (abs(fv[2 * j] - mean) + abs(fv[2 * j + 1] - mean));

    const Scalar result = kronrod * half;
    const Scalar resabs = abs_sum * abs(half);
    const Scalar resasc = asc * abs(half);
    Scalar err = abs((kronrod - gauss) * half);
    if (resasc != 0 && err != 0) err = resasc * std::min(Scalar(1), pow(200 * err / resasc, Scalar(1.5)));
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    if (resabs > std::numeric_limits<Scalar>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
    return {a, b, result, err};
}

}  // namespace detail

// Bisects the panel with the largest error estimate until the summed estimate
// falls below max(abs_tol, rel_tol * |I|). Throws NumericFailure when the
// interval budget runs out first.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_adaptive(const F& f, Scalar a, Scalar b,
                                            const QuadratureOptions<Scalar>& opts = {}) {
    using std::abs;
    std::priority_queue<detail::Panel<Scalar>> heap;
    auto first = detail::kronrod_panel<Scalar>(f, a, b);
    Scalar value = first.value;
    Scalar error = first.error;
    heap.push(first);
    std::size_t intervals = 1;
    while (error > std::max(opts.abs_tol, opts.rel_tol * abs(value))) {
        if (intervals >= opts.max_intervals)
            throw NumericFailure("adaptive quadrature exhausted its interval budget",
                                 static_cast<double>(error));
        const auto worst = heap.top();
        heap.pop();
        const Scalar mid = (worst.a + worst.b) / 2;
        auto left = detail::kronrod_panel<Scalar>(f, worst.a, mid);
        auto right = detail::kronrod_panel<Scalar>(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift accumulated by the incremental updates.
    Scalar total = 0;
    Scalar total_err = 0;
    std::vector<detail::Panel<Scalar>> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    for (const auto& p : panels) {
        total += p.value;
        total_err += p.error;
    }
    return {total, total_err, intervals};
}

}  // namespace udw
