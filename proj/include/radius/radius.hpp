#pragma once

#include "radius/aggregate.hpp"
#include "radius/baselines.hpp"
#include "radius/bootstrap.hpp"
#include "radius/distribution.hpp"
#include "radius/errors.hpp"
#include "radius/io.hpp"
#include "radius/model.hpp"
#include "radius/ranking.hpp"
#include "radius/rng.hpp"
#include "radius/special_functions.hpp"
#include "radius/version.hpp"
