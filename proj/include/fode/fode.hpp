#pragma once

#include "fode/analysis_kernels.hpp"
#include "fode/caputo_operator.hpp"
#include "fode/corrections.hpp"
#include "fode/errors.hpp"
#include "fode/grid.hpp"
#include "fode/solver.hpp"
#include "fode/special_functions.hpp"
#include "fode/verification.hpp"
#include "fode/weights.hpp"
