#pragma once

#include "rgg/combinatorics.hpp"
#include "rgg/core.hpp"
#include "rgg/exact.hpp"
#include "rgg/inputs.hpp"
#include "rgg/montecarlo.hpp"
#include "rgg/plimit.hpp"
#include "rgg/transform.hpp"
#include "rgg/version.hpp"
