#pragma once

#include "urysohn/errors.hpp"
#include "urysohn/extrapolation.hpp"
#include "urysohn/galerkin.hpp"
#include "urysohn/newton.hpp"
#include "urysohn/nystrom.hpp"
#include "urysohn/point_values.hpp"
#include "urysohn/poly_basis.hpp"
#include "urysohn/problem.hpp"
#include "urysohn/projection.hpp"
#include "urysohn/quadrature.hpp"
