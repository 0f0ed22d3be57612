#pragma once

// Umbrella header for the matter-wave diffraction library.

#include "constants.hpp"
#include "model.hpp"
#include "specfun.hpp"
#include "quasitime.hpp"
#include "paraxial.hpp"
#include "nonparaxial.hpp"
#include "reference.hpp"
#include "metrology.hpp"
