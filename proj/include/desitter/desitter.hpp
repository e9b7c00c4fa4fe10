#pragma once

#include "curve.hpp"
#include "error.hpp"
#include "frenet.hpp"
#include "geodesics.hpp"
#include "golden.hpp"
#include "integrate.hpp"
#include "io.hpp"
#include "jet.hpp"
#include "minkowski.hpp"
#include "projection.hpp"
#include "pseudosphere.hpp"
#include "conical_surface.hpp"
#include "real.hpp"
#include "rectifying.hpp"
#include "sampled_curve.hpp"
#include "showcase.hpp"
#include "synthesis.hpp"
#include "tolerances.hpp"
