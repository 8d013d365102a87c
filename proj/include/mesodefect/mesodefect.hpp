#pragma once

#include "mesodefect/canonical_fields.hpp"
#include "mesodefect/concentrated.hpp"
#include "mesodefect/decomposition.hpp"
#include "mesodefect/defect_model.hpp"
#include "mesodefect/distributions.hpp"
#include "mesodefect/grid_solver.hpp"
#include "mesodefect/multivalued.hpp"
#include "mesodefect/parallel.hpp"
#include "mesodefect/quadrature.hpp"
#include "mesodefect/random.hpp"
#include "mesodefect/types.hpp"
