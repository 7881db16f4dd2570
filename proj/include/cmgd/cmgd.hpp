#pragma once

// Umbrella header.

#include "errors.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "root_finding.hpp"
#include "wave_curves.hpp"
#include "exact_riemann.hpp"
#include "pressureless.hpp"
#include "limits.hpp"
#include "fv_oracle.hpp"
