#include "jdkm/series.hpp"

#include <cmath>
#include <stdexcept>

namespace jdkm {

void validate(const TimeSeries& ts) {
    if (ts.values.size() < 2)
        throw std::invalid_argument("TimeSeries: need at least 2 observations");
    if (!(ts.dt > 0.0)) throw std::invalid_argument("TimeSeries: dt must be positive");
    if (ts.points_per_day < 1)
        throw std::invalid_argument("TimeSeries: points_per_day must be >= 1");
    for (double v : ts.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("TimeSeries: non-finite observation");
}

} // namespace jdkm
