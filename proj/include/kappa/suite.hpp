#pragma once

#include "kappa/report.hpp"
#include "kappa/scalar.hpp"

#include <functional>
#include <string>
#include <vector>

namespace kappa {

struct SuiteOptions {
    Trunc trunc{3, 3};
    unsigned seed = 20240;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Report(const SuiteOptions&)> run;
};

// The acceptance scenarios, in order. Each returns one report; a criterion
// passes when its report has no failing check.
const std::vector<Criterion>& acceptance_suite();

}  // namespace kappa
