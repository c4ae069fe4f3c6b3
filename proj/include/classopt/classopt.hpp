#pragma once

#include "classopt/atlas_io.hpp"
#include "classopt/balanced.hpp"
#include "classopt/core.hpp"
#include "classopt/families.hpp"
#include "classopt/multitype.hpp"
#include "classopt/partitions.hpp"
#include "classopt/polynomial.hpp"
#include "classopt/regions.hpp"
#include "classopt/solver.hpp"
