#pragma once

// Umbrella header: exact constructions over truncated current Lie algebras —
// classical base algebras, PBW straightening, central trace/Pfaffian
// families, and their loop-algebra (vacuum module) counterparts.

#include "takiff/rational.hpp"
#include "takiff/ratmatrix.hpp"
#include "takiff/lie.hpp"
#include "takiff/tensorop.hpp"
#include "takiff/nc.hpp"
#include "takiff/oracle.hpp"
#include "takiff/pbw.hpp"
#include "takiff/commpoly.hpp"
#include "takiff/umatrix.hpp"
#include "takiff/takiff_central.hpp"
#include "takiff/sugawara.hpp"
#include "takiff/serialize.hpp"
