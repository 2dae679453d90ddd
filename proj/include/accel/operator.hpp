#pragma once

#include "accel/grid.hpp"
#include "accel/propagator.hpp"
#include "accel/qkernel.hpp"
#include "accel/similarity.hpp"
#include "accel/vacuum.hpp"
