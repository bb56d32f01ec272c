#pragma once

#include "permstat/error.hpp"
#include "permstat/permutation.hpp"
#include "permstat/pattern.hpp"
#include "permstat/statistics.hpp"
#include "permstat/perm_sets.hpp"
#include "permstat/bijections.hpp"
#include "permstat/closed_forms.hpp"
#include "permstat/distribution.hpp"
#include "permstat/discovery.hpp"
