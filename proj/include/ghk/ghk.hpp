#ifndef GHK_GHK_HPP
#define GHK_GHK_HPP

#include "ghk/errors.hpp"
#include "ghk/gould_hopper.hpp"
#include "ghk/grids.hpp"
#include "ghk/identities.hpp"
#include "ghk/matrix.hpp"
#include "ghk/multiindex.hpp"
#include "ghk/report.hpp"
#include "ghk/scalar.hpp"
#include "ghk/stochastic.hpp"

#endif
