#pragma once

// Umbrella header: lower bounds on the mutual information of a binary and a
// finite random variable over a variational-distance ball, plus the derived
// confidence floors for plug-in estimates.

#include "mibound/confidence.hpp"
#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"
#include "mibound/io.hpp"
#include "mibound/oracle.hpp"
#include "mibound/solver.hpp"
#include "mibound/sweep.hpp"
