#pragma once

#include "ucstar/numlin/linear_system.hpp"
#include "ucstar/numlin/matrix.hpp"
#include "ucstar/numlin/rng.hpp"
#include "ucstar/numlin/spectral.hpp"
#include "ucstar/numlin/subspace.hpp"
