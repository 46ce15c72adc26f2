#pragma once

#include "filter_ergodics/assumptions.hpp"
#include "filter_ergodics/battery.hpp"
#include "filter_ergodics/csv.hpp"
#include "filter_ergodics/error.hpp"
#include "filter_ergodics/estimate.hpp"
#include "filter_ergodics/filter.hpp"
#include "filter_ergodics/kalman.hpp"
#include "filter_ergodics/kernel.hpp"
#include "filter_ergodics/lifts.hpp"
#include "filter_ergodics/manifest.hpp"
#include "filter_ergodics/merging.hpp"
#include "filter_ergodics/mixing.hpp"
#include "filter_ergodics/model_io.hpp"
#include "filter_ergodics/nondegeneracy.hpp"
#include "filter_ergodics/parallel.hpp"
#include "filter_ergodics/rng.hpp"
#include "filter_ergodics/simulate.hpp"
#include "filter_ergodics/stability.hpp"
#include "filter_ergodics/state_space.hpp"
#include "filter_ergodics/stationary.hpp"
#include "filter_ergodics/svg.hpp"
#include "filter_ergodics/zoo.hpp"
