#pragma once

// Umbrella header.

#include "wcc/cauchy_kovalewski.hpp"
#include "wcc/driver.hpp"
#include "wcc/errors.hpp"
#include "wcc/jet.hpp"
#include "wcc/limiter.hpp"
#include "wcc/mesh.hpp"
#include "wcc/output.hpp"
#include "wcc/parallel.hpp"
#include "wcc/physics.hpp"
#include "wcc/problems.hpp"
#include "wcc/scheme1d.hpp"
#include "wcc/scheme2d.hpp"
#include "wcc/scheme_config.hpp"
#include "wcc/solver.hpp"
#include "wcc/stability.hpp"
