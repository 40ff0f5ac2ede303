#pragma once

#include "cornerheat/corner_params.hpp"
#include "cornerheat/cutoff.hpp"
#include "cornerheat/evolve.hpp"
#include "cornerheat/ground_state.hpp"
#include "cornerheat/hardy.hpp"
#include "cornerheat/profiles.hpp"
#include "cornerheat/quadrature.hpp"
#include "cornerheat/radial_grid.hpp"
#include "cornerheat/self_similar.hpp"
#include "cornerheat/separated_function.hpp"
#include "cornerheat/special.hpp"
#include "cornerheat/spectrum.hpp"
#include "cornerheat/tridiagonal.hpp"
#include "cornerheat/types.hpp"
