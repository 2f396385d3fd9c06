#pragma once

// Signal processing on quiver representations.

#include "error.hpp"
#include "quiver.hpp"
#include "path_algebra.hpp"
#include "linalg.hpp"
#include "representation.hpp"
#include "morphisms.hpp"
#include "decomposition.hpp"
#include "rational.hpp"
#include "tda.hpp"
#include "io.hpp"
