#pragma once

#include "cohomkit/cohomology.hpp"
#include "cohomkit/cup.hpp"
#include "cohomkit/fibrewise.hpp"
#include "cohomkit/fiso.hpp"
#include "cohomkit/json_io.hpp"
#include "cohomkit/koszul.hpp"
#include "cohomkit/strata.hpp"
#include "cohomkit/suites.hpp"
