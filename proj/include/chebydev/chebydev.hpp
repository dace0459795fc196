#pragma once

// Everything at once. The library is header-only; link libgmp.

#include "chebydev/bestapprox.hpp"
#include "chebydev/constructions.hpp"
#include "chebydev/domain.hpp"
#include "chebydev/evaluator.hpp"
#include "chebydev/lp.hpp"
#include "chebydev/parallel.hpp"
#include "chebydev/poly.hpp"
#include "chebydev/poly_json.hpp"
#include "chebydev/rational.hpp"
#include "chebydev/signatures.hpp"
#include "chebydev/supnorm.hpp"
#include "chebydev/symfun.hpp"
#include "chebydev/verify.hpp"

#ifndef CHEBYDEV_VERSION
#define CHEBYDEV_VERSION "0.1.0"
#endif

namespace chebydev {

inline constexpr const char* version() { return CHEBYDEV_VERSION; }

}  // namespace chebydev
