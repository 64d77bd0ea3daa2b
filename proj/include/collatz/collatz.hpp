#pragma once
// Umbrella header.

#include "collatz/affine.hpp"
#include "collatz/composition.hpp"
#include "collatz/sequences.hpp"
#include "collatz/spiral.hpp"
#include "collatz/step.hpp"
#include "collatz/trajectory.hpp"
#include "collatz/tree.hpp"
