#pragma once
// Umbrella header.

#include "fogran/io.hpp"
#include "fogran/model.hpp"
#include "fogran/montecarlo.hpp"
#include "fogran/ndt.hpp"
#include "fogran/placement.hpp"
#include "fogran/placement_io.hpp"
#include "fogran/rational.hpp"
#include "fogran/rng.hpp"
#include "fogran/scheduler.hpp"
