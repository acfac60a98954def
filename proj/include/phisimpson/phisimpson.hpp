#pragma once

#include "phisimpson/bounds.hpp"
#include "phisimpson/convexity.hpp"
#include "phisimpson/domain.hpp"
#include "phisimpson/errors.hpp"
#include "phisimpson/expr.hpp"
#include "phisimpson/identity.hpp"
#include "phisimpson/pipeline.hpp"
#include "phisimpson/quad.hpp"
#include "phisimpson/report.hpp"
