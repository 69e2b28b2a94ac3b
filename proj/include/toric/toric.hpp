#pragma once

#include "toric/intlat/integer.hpp"
#include "toric/intlat/polytope.hpp"
#include "toric/intlat/smith.hpp"
#include "toric/toric/class_group.hpp"
#include "toric/toric/cohomology.hpp"
#include "toric/toric/divisor.hpp"
#include "toric/toric/fan.hpp"
#include "toric/cox/dehomogenize.hpp"
#include "toric/cox/graded_basis.hpp"
#include "toric/cox/homogenize.hpp"
#include "toric/regpair/regpair.hpp"
#include "toric/eigsolve/multiplication.hpp"
#include "toric/eigsolve/res.hpp"
#include "toric/eigsolve/schur.hpp"
#include "toric/coords/binomial.hpp"
#include "toric/coords/recover.hpp"
#include "toric/coords/solve.hpp"
#include "toric/io/commands.hpp"
