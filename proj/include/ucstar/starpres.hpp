#pragma once

#include "ucstar/starpres/element.hpp"
#include "ucstar/starpres/evaluate.hpp"
#include "ucstar/starpres/expr.hpp"
#include "ucstar/starpres/ism.hpp"
#include "ucstar/starpres/presentation.hpp"
