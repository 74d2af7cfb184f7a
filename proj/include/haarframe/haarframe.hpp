#pragma once

#include "haarframe/rational.hpp"
#include "haarframe/interval_union.hpp"
#include "haarframe/piecewise_map.hpp"
#include "haarframe/invariant_set.hpp"
#include "haarframe/gabor_params.hpp"
#include "haarframe/witness.hpp"
#include "haarframe/frame_decider.hpp"
#include "haarframe/oracle.hpp"
