#ifndef UAVPATH_UAVPATH_HPP_
#define UAVPATH_UAVPATH_HPP_

#include "uavpath/check.hpp"
#include "uavpath/commands.hpp"
#include "uavpath/environment.hpp"
#include "uavpath/errors.hpp"
#include "uavpath/evolution.hpp"
#include "uavpath/exact.hpp"
#include "uavpath/io.hpp"
#include "uavpath/metrics.hpp"
#include "uavpath/milp.hpp"
#include "uavpath/operators.hpp"
#include "uavpath/pareto.hpp"
#include "uavpath/physics.hpp"
#include "uavpath/random.hpp"
#include "uavpath/report.hpp"
#include "uavpath/solution.hpp"
#include "uavpath/svg.hpp"
#include "uavpath/tuner.hpp"

#endif  // UAVPATH_UAVPATH_HPP_
