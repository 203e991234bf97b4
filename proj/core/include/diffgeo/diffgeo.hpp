#pragma once

#include "diffgeo/catalog.hpp"
#include "diffgeo/curve.hpp"
#include "diffgeo/errors.hpp"
#include "diffgeo/expr.hpp"
#include "diffgeo/jet.hpp"
#include "diffgeo/ode.hpp"
#include "diffgeo/quadrature.hpp"
#include "diffgeo/roots.hpp"
#include "diffgeo/surface.hpp"
#include "diffgeo/surface_curve.hpp"
#include "diffgeo/vec3.hpp"
