#pragma once

#include "lpc/engine.hpp"
#include "lpc/errors.hpp"
#include "lpc/formula.hpp"
#include "lpc/harness.hpp"
#include "lpc/interp.hpp"
#include "lpc/l0.hpp"
#include "lpc/l1.hpp"
#include "lpc/l2.hpp"
#include "lpc/modes.hpp"
#include "lpc/parser.hpp"
#include "lpc/preprocess.hpp"
#include "lpc/pretty.hpp"
#include "lpc/search.hpp"
#include "lpc/sexpr.hpp"
#include "lpc/subst.hpp"
#include "lpc/term.hpp"
