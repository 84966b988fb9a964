#pragma once

#include "opscale/linalg.hpp"
#include "opscale/dft.hpp"
#include "opscale/operators.hpp"
#include "opscale/scaling.hpp"
#include "opscale/pei.hpp"
#include "opscale/signals.hpp"
#include "opscale/bench.hpp"
#include "opscale/io.hpp"
