#include "aps/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace aps {

double kld(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions have different lengths");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 0.0 || q[j] < 0.0) {
            throw std::invalid_argument("distributions must be non-negative");
        }
        if (p[j] == 0.0) {
            continue;
        }
        if (q[j] == 0.0) {
            throw std::invalid_argument("Q vanishes where P has mass");
        }
        sum += p[j] * std::log(p[j] / q[j]);
    }
    return sum;
}

double kld_vs_uniform(std::span<const double> p) {
    if (p.empty()) {
        throw std::invalid_argument("empty distribution");
    }
    const double size = static_cast<double>(p.size());
    double sum = 0.0;
    for (double pj : p) {
        if (pj < 0.0) {
            throw std::invalid_argument("distributions must be non-negative");
        }
        if (pj > 0.0) {
            sum += pj * std::log(pj * size);
        }
    }
    return sum;
}

} // namespace aps
