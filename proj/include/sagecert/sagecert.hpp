#pragma once

#include <sagecert/decompose.hpp>
#include <sagecert/io.hpp>
#include <sagecert/newton.hpp>
#include <sagecert/optimize.hpp>
#include <sagecert/polyform.hpp>
#include <sagecert/sage_cones.hpp>
#include <sagecert/signomial.hpp>
#include <sagecert/solver.hpp>
