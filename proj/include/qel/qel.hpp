#pragma once
// Umbrella header for the qel library: the quadratic family t - x^2, its
// root branches, transverse-intersection counts and entropy, multimodal
// generalizations, superstable cycles, and eventually-periodic parameters.

#define QEL_VERSION "1.0.0"

#include "qel/critical_poly.hpp"
#include "qel/entropy.hpp"
#include "qel/misiurewicz.hpp"
#include "qel/multimodal.hpp"
#include "qel/parallel.hpp"
#include "qel/quad.hpp"
#include "qel/root_branch.hpp"
#include "qel/signature.hpp"
#include "qel/superstable.hpp"
