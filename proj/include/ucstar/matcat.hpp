#pragma once

#include "ucstar/matcat/category.hpp"
#include "ucstar/matcat/exponential.hpp"
#include "ucstar/matcat/functor.hpp"
#include "ucstar/matcat/limits.hpp"
#include "ucstar/matcat/natural.hpp"
#include "ucstar/matcat/unitary.hpp"
