#pragma once

#include "invpoly/error.hpp"
#include "invpoly/intlin.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/classify.hpp"
#include "invpoly/milnor.hpp"
#include "invpoly/symmetry.hpp"
#include "invpoly/cleave.hpp"
#include "invpoly/json_io.hpp"
#include "invpoly/enumerate.hpp"
