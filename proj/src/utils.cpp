#include "rtlab/utils.hpp"

#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>
#include <thread>

namespace rtlab {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("RT_SUPERCONV_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) return static_cast<int>(v);
            warn("ignoring invalid RT_SUPERCONV_THREADS value");
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }();
    return cached;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = std::min(x.size(), y.size());
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

}  // namespace rtlab
