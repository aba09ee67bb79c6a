#pragma once

#include "syft/common.hpp"
#include "syft/formula.hpp"
#include "syft/parser.hpp"
#include "syft/partition.hpp"
#include "syft/semantics.hpp"
#include "syft/bdd.hpp"
#include "syft/progression.hpp"
#include "syft/dfa.hpp"
#include "syft/dfa_builder.hpp"
#include "syft/minimize.hpp"
#include "syft/symbolic.hpp"
#include "syft/solver.hpp"
#include "syft/strategy.hpp"
#include "syft/transducer_io.hpp"
#include "syft/ltl_reduction.hpp"
#include "syft/benchgen.hpp"
