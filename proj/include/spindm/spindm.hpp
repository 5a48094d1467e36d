#pragma once

#include "spindm/concurrence.hpp"
#include "spindm/critical.hpp"
#include "spindm/dynamics.hpp"
#include "spindm/errors.hpp"
#include "spindm/hamiltonian.hpp"
#include "spindm/linalg.hpp"
#include "spindm/models.hpp"
#include "spindm/params.hpp"
#include "spindm/sweep.hpp"
#include "spindm/thermal.hpp"
#include "spindm/version.hpp"
