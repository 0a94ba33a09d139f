#pragma once

// Umbrella header.

#include "offgrid/analysis.hpp"
#include "offgrid/experiments.hpp"
#include "offgrid/io.hpp"
#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/reconstruct.hpp"
#include "offgrid/rng.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/solve.hpp"
#include "offgrid/transforms.hpp"
#include "offgrid/util.hpp"
