#pragma once

#include "supereds/random.hpp"

namespace supereds::testing {

using random::random_poly;

}  // namespace supereds::testing
