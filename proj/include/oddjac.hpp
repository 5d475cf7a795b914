#pragma once

#include "oddjac/bv.hpp"
#include "oddjac/chart.hpp"
#include "oddjac/constructors.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/forms.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/jacobi.hpp"
#include "oddjac/monomial.hpp"
#include "oddjac/parity.hpp"
#include "oddjac/parser.hpp"
#include "oddjac/poisson.hpp"
#include "oddjac/property_suite.hpp"
#include "oddjac/rational.hpp"
#include "oddjac/render.hpp"
#include "oddjac/report.hpp"
#include "oddjac/structure_file.hpp"
#include "oddjac/universe.hpp"
#include "oddjac/vector_field.hpp"
