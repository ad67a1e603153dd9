#pragma once

#include "assignment.hpp"
#include "bc_method.hpp"
#include "degeneracy.hpp"
#include "error.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "matrix_family.hpp"
#include "monodromy.hpp"
#include "ordering.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "polynomial.hpp"
#include "scenario.hpp"
#include "sheets.hpp"
#include "spectra.hpp"
#include "tracking.hpp"
