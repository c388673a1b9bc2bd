#pragma once

// Umbrella header.

#include "gordian/curve.hpp"
#include "gordian/dubins.hpp"
#include "gordian/error.hpp"
#include "gordian/export.hpp"
#include "gordian/family.hpp"
#include "gordian/io.hpp"
#include "gordian/oracle.hpp"
#include "gordian/regions.hpp"
#include "gordian/reproduce.hpp"
#include "gordian/thickness.hpp"
#include "gordian/vec.hpp"
