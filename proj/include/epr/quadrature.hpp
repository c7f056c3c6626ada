#pragma once
// Gauss-Legendre quadrature. Nodes/weights via Newton iteration on P_n,
// cached per order.

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace epr::quad {

struct Rule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

inline const Rule& gauss_legendre(int n) {
    static std::map<int, Rule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// composite GL over [a,b] split into `panels` equal panels, n nodes each
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, int n = 64, int panels = 1) {
    if (b <= a) return 0.0;
    const Rule& r = gauss_legendre(n);
    double total = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h, half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += r.weights[i] * f(mid + half * r.nodes[i]);
        total += acc * half;
    }
    return total;
}

}  // namespace epr::quad
