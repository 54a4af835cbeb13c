#pragma once

// Umbrella header for the OppLoD looming-detection library.

#include "opplod/config.hpp"
#include "opplod/convolve.hpp"
#include "opplod/error.hpp"
#include "opplod/frame.hpp"
#include "opplod/io.hpp"
#include "opplod/kernel.hpp"
#include "opplod/params.hpp"
#include "opplod/pipeline.hpp"
#include "opplod/ring.hpp"
#include "opplod/rmo.hpp"
#include "opplod/stimuli.hpp"
