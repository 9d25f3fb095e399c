#pragma once

#include "bgw.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "expr.hpp"
#include "jet.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "simulator.hpp"
#include "stats.hpp"
#include "symbolic.hpp"
#include "word.hpp"
