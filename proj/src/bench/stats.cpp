#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "vmorph/bench.hpp"

namespace vmorph {

double margin_of_error(const std::vector<double>& samples, double confidence) {
    if (samples.size() < 2) throw InsufficientSamples(samples.size());
    if (!(confidence > 0.0 && confidence < 1.0)) throw Error("confidence must lie in (0, 1)");
    if (std::all_of(samples.begin(), samples.end(), [&](double x) { return x == samples.front(); })) return 0.0;
    const auto n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double s = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(dist, 1.0 - (1.0 - confidence) / 2.0);
    return t * s / std::sqrt(n);
}

}  // namespace vmorph
