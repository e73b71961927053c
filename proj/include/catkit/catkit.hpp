#pragma once

// Umbrella header.

#include "catkit/error.hpp"
#include "catkit/fincat.hpp"
#include "catkit/sets.hpp"
#include "catkit/setcalc.hpp"
#include "catkit/yoneda.hpp"
#include "catkit/algebra.hpp"
#include "catkit/delta.hpp"
#include "catkit/simplicial.hpp"
#include "catkit/subdivision.hpp"
#include "catkit/homotopy.hpp"
#include "catkit/modelcat.hpp"
#include "catkit/io.hpp"
