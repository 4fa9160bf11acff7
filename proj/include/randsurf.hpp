#pragma once

#include "randsurf/common.hpp"
#include "randsurf/word_algebra.hpp"
#include "randsurf/rng.hpp"
#include "randsurf/gluing.hpp"
#include "randsurf/spectrum.hpp"
#include "randsurf/poisson.hpp"
#include "randsurf/log_number.hpp"
#include "randsurf/chen_stein.hpp"
#include "randsurf/parallel.hpp"
#include "randsurf/exact_oracle.hpp"
