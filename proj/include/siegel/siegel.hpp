#ifndef SIEGEL_SIEGEL_HPP
#define SIEGEL_SIEGEL_HPP

#include "siegel/bergman.hpp"
#include "siegel/core.hpp"
#include "siegel/curve.hpp"
#include "siegel/degeneration.hpp"
#include "siegel/errors.hpp"
#include "siegel/json_io.hpp"
#include "siegel/measure.hpp"
#include "siegel/periods.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/reduction.hpp"
#include "siegel/rng.hpp"
#include "siegel/universal.hpp"

#endif
