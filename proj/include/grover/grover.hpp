#pragma once

#include "grover/types.hpp"
#include "grover/state.hpp"
#include "grover/simulator.hpp"
#include "grover/recursion.hpp"
#include "grover/analysis.hpp"
