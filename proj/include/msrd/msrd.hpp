#pragma once

// Umbrella header: exact sum-rank-metric codes over small finite-field
// towers, four MSRD construction families, and exhaustive verification
// oracles against the sum-rank Singleton bound.

#include "msrd/codefile.hpp"
#include "msrd/codes.hpp"
#include "msrd/combiners.hpp"
#include "msrd/error.hpp"
#include "msrd/extenders.hpp"
#include "msrd/gf.hpp"
#include "msrd/linalg.hpp"
#include "msrd/msrd_gen.hpp"
#include "msrd/sumrank.hpp"
