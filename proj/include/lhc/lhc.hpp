#pragma once

#include "lhc/syntax.hpp"
#include "lhc/binding.hpp"
#include "lhc/substitution.hpp"
#include "lhc/trail_ops.hpp"
#include "lhc/term_subst.hpp"
#include "lhc/pretty.hpp"
#include "lhc/parser.hpp"
#include "lhc/typing.hpp"
#include "lhc/reduction.hpp"
#include "lhc/simplified.hpp"
#include "lhc/graph.hpp"
#include "lhc/enumerate.hpp"
