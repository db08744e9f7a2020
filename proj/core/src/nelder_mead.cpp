#include "cucgarch/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cucgarch {

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f,
                             const Vector& x0, const NelderMeadOptions& opts) {
    const int n = static_cast<int>(x0.size());
    NelderMeadResult result;
    result.x = x0;

    auto project = [&](const Vector& x) { return opts.project ? opts.project(x) : x; };

    int evals = 0;
    auto eval = [&](const Vector& x) {
        ++evals;
        return f(x);
    };

    if (n == 0) {
        result.fmin = eval(x0);
        result.evals = evals;
        result.converged = true;
        return result;
    }

    std::vector<Vector> x(static_cast<std::size_t>(n + 1));
    std::vector<double> fx(static_cast<std::size_t>(n + 1));
    x[0] = project(x0);
    fx[0] = eval(x[0]);
    for (int i = 0; i < n; ++i) {
        Vector p = x[0];
        p(i) += opts.initial_step;
        x[static_cast<std::size_t>(i + 1)] = project(p);
        fx[static_cast<std::size_t>(i + 1)] = eval(x[static_cast<std::size_t>(i + 1)]);
    }

    std::vector<int> order(static_cast<std::size_t>(n + 1));
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fx[static_cast<std::size_t>(a)] <
                                                    fx[static_cast<std::size_t>(b)]; });
    };
    sort_order();

    Vector incumbent = x[static_cast<std::size_t>(order[0])];
    double fbest = fx[static_cast<std::size_t>(order[0])];
    result.best_trace.push_back(fbest);
    bool stopped = false;

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    while (evals < opts.max_evals && !stopped) {
        const int best = order[0];
        const int worst = order[static_cast<std::size_t>(n)];
        const int second_worst = order[static_cast<std::size_t>(n - 1)];

        if (std::abs(fx[static_cast<std::size_t>(worst)] -
                     fx[static_cast<std::size_t>(best)]) <= opts.f_tol) {
            result.converged = true;
            break;
        }

        Vector centroid = Vector::Zero(n);
        for (int k = 0; k <= n; ++k)
            if (order[static_cast<std::size_t>(k)] != worst)
                centroid += x[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        centroid /= static_cast<double>(n);

        auto& xw = x[static_cast<std::size_t>(worst)];
        auto& fw = fx[static_cast<std::size_t>(worst)];

        Vector xr = project(centroid + kReflect * (centroid - xw));
        double fr = eval(xr);

        if (fr < fx[static_cast<std::size_t>(best)]) {
            Vector xe = project(centroid + kExpand * (xr - centroid));
            double fe = eval(xe);
            if (fe < fr) {
                xw = xe;
                fw = fe;
            } else {
                xw = xr;
                fw = fr;
            }
        } else if (fr < fx[static_cast<std::size_t>(second_worst)]) {
            xw = xr;
            fw = fr;
        } else {
            const bool outside = fr < fw;
            Vector xc = outside ? project(centroid + kContract * (xr - centroid))
                                : project(centroid - kContract * (centroid - xw));
            double fc = eval(xc);
            if (fc < std::min(fr, fw)) {
                xw = xc;
                fw = fc;
            } else {
                // Shrink toward the best vertex.
                const auto& xb = x[static_cast<std::size_t>(best)];
                for (int k = 0; k <= n; ++k) {
                    const int idx = order[static_cast<std::size_t>(k)];
                    if (idx == best) continue;
                    auto& xi = x[static_cast<std::size_t>(idx)];
                    xi = project(xb + kShrink * (xi - xb));
                    fx[static_cast<std::size_t>(idx)] = eval(xi);
                    if (evals >= opts.max_evals) break;
                }
            }
        }

        sort_order();
        const double fnew = fx[static_cast<std::size_t>(order[0])];
        if (fnew < fbest) {
            const Vector previous = incumbent;
            incumbent = x[static_cast<std::size_t>(order[0])];
            fbest = fnew;
            result.best_trace.push_back(fbest);
            if (opts.stop_on_move && opts.stop_on_move(previous, incumbent)) {
                result.converged = true;
                stopped = true;
            }
        }
    }

    result.x = incumbent;
    result.fmin = fbest;
    result.evals = evals;
    return result;
}

}  // namespace cucgarch
