#pragma once

#include "fourvertex/analysis.hpp"
#include "fourvertex/bicircle.hpp"
#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/fixtures.hpp"
#include "fourvertex/geometry.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/moebius.hpp"
#include "fourvertex/solver.hpp"
#include "fourvertex/winding.hpp"
