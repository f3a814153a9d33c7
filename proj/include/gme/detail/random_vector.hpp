#pragma once

#include <cmath>
#include <random>

namespace gme {

template <class Rng>
Factor random_unit_vector(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Factor v(d);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& c : v) {
            const double re = normal(rng);
            const double im = normal(rng);
            c = {re, im};
            n2 += re * re + im * im;
        }
    } while (!(n2 > 0.0));
    const double n = std::sqrt(n2);
    for (auto& c : v) c /= n;
    return v;
}

} // namespace gme
