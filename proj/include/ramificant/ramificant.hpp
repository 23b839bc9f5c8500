#pragma once

// Umbrella header.

#include "ramificant/errors.hpp"
#include "ramificant/rational.hpp"
#include "ramificant/multipoly.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/reduction.hpp"
#include "ramificant/universal_pi.hpp"
#include "ramificant/quadrature.hpp"
#include "ramificant/periods.hpp"
#include "ramificant/integrability.hpp"
#include "ramificant/ode.hpp"
#include "ramificant/io.hpp"
