#pragma once

#include "analysis.hpp"
#include "catalog.hpp"
#include "chief_series.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "labeling.hpp"
#include "permutation.hpp"
#include "subgroup_lattice.hpp"
#include "verification.hpp"
