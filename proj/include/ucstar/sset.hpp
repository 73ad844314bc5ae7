#pragma once

#include "ucstar/sset/pi.hpp"
#include "ucstar/sset/simplicial.hpp"
