#pragma once

// Umbrella header: exact optimization of posimodular set functions given by
// value oracles, the adversarial instance families behind the oracle-count
// lower bounds, and the Horn-clause machinery driving the bounded-range
// minimizer.

#include "horn.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "maximize.hpp"
#include "minimize.hpp"
#include "oracle.hpp"
#include "result.hpp"
#include "subset.hpp"
#include "value.hpp"
