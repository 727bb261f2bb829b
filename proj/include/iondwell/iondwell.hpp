#pragma once

// Semiclassical (JWKB) dwell times for tunnel ionization: screened atomic
// potentials in an external static field, barrier geometry, dwell/traversal
// times and velocity-dependent friction corrections, plus field-sweep and
// plot-data utilities.

#include "iondwell/atom.hpp"
#include "iondwell/constants.hpp"
#include "iondwell/dissipation.hpp"
#include "iondwell/dump.hpp"
#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/overlay.hpp"
#include "iondwell/potential.hpp"
#include "iondwell/quadrature.hpp"
#include "iondwell/sweep.hpp"
#include "iondwell/table_io.hpp"
#include "iondwell/times.hpp"
#include "iondwell/triangle.hpp"
