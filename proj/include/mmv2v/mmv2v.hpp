#pragma once

#include "mmv2v/error.hpp"
#include "mmv2v/geometry.hpp"
#include "mmv2v/traffic.hpp"
#include "mmv2v/radiolink.hpp"
#include "mmv2v/quadrature.hpp"
#include "mmv2v/analytics.hpp"
#include "mmv2v/montecarlo.hpp"
#include "mmv2v/experiments.hpp"
