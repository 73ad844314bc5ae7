#pragma once

#include "ucstar/gpd/cstar.hpp"
#include "ucstar/gpd/finite_category.hpp"
#include "ucstar/gpd/fp.hpp"
#include "ucstar/gpd/iso.hpp"
#include "ucstar/gpd/nerve.hpp"
