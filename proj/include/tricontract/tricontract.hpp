#pragma once

// Umbrella header: the whole library in one include.

#include "tricontract/errors.hpp"
#include "tricontract/phi.hpp"
#include "tricontract/metric.hpp"
#include "tricontract/analysis.hpp"
#include "tricontract/solver.hpp"
#include "tricontract/io.hpp"
#include "tricontract/fixtures.hpp"
