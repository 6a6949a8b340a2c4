#pragma once

// Exact computation of F-pure thresholds, F-thresholds, F-jumping
// coefficients and monomial test ideals on toric rings, with a
// brute-force Frobenius oracle for cross-validation.

#include "fthresh/rational.hpp"
#include "fthresh/linalg.hpp"
#include "fthresh/simplex.hpp"
#include "fthresh/cone.hpp"
#include "fthresh/monomial_ideal.hpp"
#include "fthresh/thresholds.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/problem_io.hpp"
