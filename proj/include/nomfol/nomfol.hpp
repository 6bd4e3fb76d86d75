#pragma once

#include "nominal.hpp"
#include "syntax.hpp"
#include "parser.hpp"
#include "suite.hpp"
#include "random.hpp"
#include "sigma.hpp"
#include "foleq.hpp"
#include "tarski.hpp"
#include "sequent.hpp"
#include "prover.hpp"
#include "filter.hpp"
#include "suites.hpp"
