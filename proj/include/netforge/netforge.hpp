#pragma once

#include "netforge/bounds.hpp"
#include "netforge/calculus.hpp"
#include "netforge/errors.hpp"
#include "netforge/kolmogorov.hpp"
#include "netforge/matrix.hpp"
#include "netforge/network.hpp"
#include "netforge/problems.hpp"
#include "netforge/random_nets.hpp"
#include "netforge/reference.hpp"
#include "netforge/sampler.hpp"
#include "netforge/sde.hpp"
#include "netforge/serialize.hpp"
#include "netforge/shape.hpp"
#include "netforge/stats.hpp"
#include "netforge/verify.hpp"
