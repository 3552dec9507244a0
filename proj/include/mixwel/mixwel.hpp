#pragma once

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/random.hpp"
#include "mixwel/set_cover.hpp"
#include "mixwel/subset_dp.hpp"
#include "mixwel/valuations.hpp"
#include "mixwel/model.hpp"
#include "mixwel/serialize.hpp"
#include "mixwel/exact.hpp"
#include "mixwel/conflp.hpp"
#include "mixwel/rounding.hpp"
#include "mixwel/algorithms.hpp"
#include "mixwel/harness.hpp"
#include "mixwel/hardgen.hpp"
#include "mixwel/bounds.hpp"
