#pragma once

#include "spinham/alt_diag.hpp"
#include "spinham/errors.hpp"
#include "spinham/gtensor.hpp"
#include "spinham/linalg.hpp"
#include "spinham/modelgen.hpp"
#include "spinham/random.hpp"
#include "spinham/spin_algebra.hpp"
#include "spinham/time_reversal.hpp"
#include "spinham/tolerances.hpp"
#include "spinham/types.hpp"
