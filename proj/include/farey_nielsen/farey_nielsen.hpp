#pragma once

#include "farey_nielsen/boundary.hpp"
#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"
#include "farey_nielsen/matrix_actions.hpp"
#include "farey_nielsen/nielsen.hpp"
#include "farey_nielsen/orbits.hpp"
#include "farey_nielsen/quadratic_form.hpp"
