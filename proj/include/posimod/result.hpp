#pragma once

#include <string>

#include "subset.hpp"
#include "value.hpp"

namespace posimod {

// Outcome of one optimization run. The witness lives in the universe the
// algorithm was handed (contractions are expanded away before returning);
// oracle_calls is the number of calls the run consumed on its oracle.
struct OptimizationResult {
    SubsetMask witness;
    Value value;
    long long oracle_calls = 0;
    std::string algorithm;
};

}  // namespace posimod
