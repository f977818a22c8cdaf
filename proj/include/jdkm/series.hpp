#pragma once

// The uniformly sampled series that every analysis module consumes.

#include <string>
#include <vector>

namespace jdkm {

struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;            // sampling interval in model time units
    int points_per_day = 38;    // intraday grid length
    std::string label;
};

// Throws std::invalid_argument unless the series has >= 2 finite values,
// dt > 0 and points_per_day >= 1.
void validate(const TimeSeries& series);

} // namespace jdkm
