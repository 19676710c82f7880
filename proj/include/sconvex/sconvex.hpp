#ifndef SCONVEX_SCONVEX_HPP_
#define SCONVEX_SCONVEX_HPP_

#include "sconvex/automaton.hpp"
#include "sconvex/convexity.hpp"
#include "sconvex/error.hpp"
#include "sconvex/harness.hpp"
#include "sconvex/io.hpp"
#include "sconvex/operations.hpp"
#include "sconvex/transformation.hpp"
#include "sconvex/triple_system.hpp"
#include "sconvex/witness.hpp"

#endif  // SCONVEX_SCONVEX_HPP_
