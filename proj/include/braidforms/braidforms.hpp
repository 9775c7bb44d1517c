#pragma once

// Umbrella header: exact twisted differential forms, the homotopy operator,
// the braiding with its recursion oracle, axiom checkers, braid-group
// matrices, expression parsing, and config plumbing.

#include "axioms.hpp"
#include "braiding.hpp"
#include "braidrep.hpp"
#include "config.hpp"
#include "context.hpp"
#include "endo.hpp"
#include "errors.hpp"
#include "export.hpp"
#include "forms.hpp"
#include "linalg.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "scalars.hpp"
#include "tensor.hpp"
