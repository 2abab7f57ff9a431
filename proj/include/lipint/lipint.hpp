#pragma once

// Umbrella header for the Lipschitz interpolation library.

#include "lipint/cli.hpp"
#include "lipint/config.hpp"
#include "lipint/control.hpp"
#include "lipint/csvio.hpp"
#include "lipint/errors.hpp"
#include "lipint/interpolator.hpp"
#include "lipint/lacki.hpp"
#include "lipint/metric.hpp"
#include "lipint/noise.hpp"
#include "lipint/rates.hpp"
#include "lipint/rng.hpp"
#include "lipint/sample_set.hpp"
#include "lipint/study.hpp"
#include "lipint/svg.hpp"
#include "lipint/targets.hpp"
