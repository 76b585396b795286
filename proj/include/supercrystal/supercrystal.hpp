// Everything: weight lattice, affine lattice, crystal, linkage, PBW engine,
// JSON/text forms and the verification suites.
#pragma once

#include "supercrystal/affine.hpp"
#include "supercrystal/crystal.hpp"
#include "supercrystal/io.hpp"
#include "supercrystal/linkage.hpp"
#include "supercrystal/pbw.hpp"
#include "supercrystal/rational.hpp"
#include "supercrystal/verify.hpp"
#include "supercrystal/weightspace.hpp"
