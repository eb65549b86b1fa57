#pragma once

#include "tropical/lattice.hpp"
#include "tropical/cone.hpp"
#include "tropical/fan.hpp"
#include "tropical/minkowski_weight.hpp"
#include "tropical/divisor.hpp"
#include "tropical/polyhedron.hpp"
#include "tropical/complex.hpp"
#include "tropical/cycle.hpp"
#include "tropical/m0n.hpp"
#include "tropical/io.hpp"
