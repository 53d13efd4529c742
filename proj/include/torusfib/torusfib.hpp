#pragma once

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/torus3.hpp"
#include "torusfib/pieces.hpp"
#include "torusfib/gluing.hpp"
#include "torusfib/invariants.hpp"
#include "torusfib/surgery.hpp"
#include "torusfib/manifold_file.hpp"
#include "torusfib/enumerate.hpp"
