#pragma once

#include "supereds/brackets.hpp"
#include "supereds/cohomology.hpp"
#include "supereds/context.hpp"
#include "supereds/distributions.hpp"
#include "supereds/dsl.hpp"
#include "supereds/eds.hpp"
#include "supereds/error.hpp"
#include "supereds/fixtures.hpp"
#include "supereds/forms.hpp"
#include "supereds/gauge.hpp"
#include "supereds/json_io.hpp"
#include "supereds/liesuper.hpp"
#include "supereds/linalg.hpp"
#include "supereds/scalar.hpp"
#include "supereds/superpoly.hpp"
#include "supereds/vector_field.hpp"
