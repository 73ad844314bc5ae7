#pragma once

#include "ucstar/model/factor.hpp"
#include "ucstar/model/harness.hpp"
#include "ucstar/model/lifts.hpp"
#include "ucstar/model/predicates.hpp"
#include "ucstar/model/random.hpp"
