#pragma once

#include "cubeorient/connectivity.hpp"
#include "cubeorient/error.hpp"
#include "cubeorient/generate.hpp"
#include "cubeorient/hypercube.hpp"
#include "cubeorient/isoperimetry.hpp"
#include "cubeorient/orientation.hpp"
