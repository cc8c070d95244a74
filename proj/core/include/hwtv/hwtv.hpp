#pragma once

#include "hwtv/adapt.hpp"
#include "hwtv/error.hpp"
#include "hwtv/image.hpp"
#include "hwtv/image_io.hpp"
#include "hwtv/linops.hpp"
#include "hwtv/metrics.hpp"
#include "hwtv/rng.hpp"
#include "hwtv/solver.hpp"
#include "hwtv/spectral.hpp"
#include "hwtv/synth.hpp"
