#pragma once

#include "cartan/bounds.hpp"
#include "cartan/combinatorics.hpp"
#include "cartan/converge.hpp"
#include "cartan/cross_ratio.hpp"
#include "cartan/error.hpp"
#include "cartan/limit_group.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/obstruct.hpp"
#include "cartan/polynomial.hpp"
#include "cartan/projective.hpp"
#include "cartan/rational.hpp"
