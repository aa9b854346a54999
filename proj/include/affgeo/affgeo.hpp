#pragma once

#include "affgeo/codes.hpp"
#include "affgeo/construct.hpp"
#include "affgeo/design.hpp"
#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/galois.hpp"
#include "affgeo/io.hpp"
#include "affgeo/matroid.hpp"
#include "affgeo/netsim.hpp"
