#pragma once

#include "phav/common.hpp"
#include "phav/distribution.hpp"
#include "phav/measures.hpp"
#include "phav/sampling.hpp"
#include "phav/specfun.hpp"
#include "phav/states.hpp"
#include "phav/sweeps.hpp"
#include "phav/wigner.hpp"
