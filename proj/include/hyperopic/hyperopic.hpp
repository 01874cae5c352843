#pragma once

#include "hyperopic/bounds.hpp"
#include "hyperopic/errors.hpp"
#include "hyperopic/format.hpp"
#include "hyperopic/game.hpp"
#include "hyperopic/generators.hpp"
#include "hyperopic/graph.hpp"
#include "hyperopic/referee.hpp"
#include "hyperopic/scn.hpp"
#include "hyperopic/solver.hpp"
#include "hyperopic/strategies.hpp"
#include "hyperopic/vertex_set.hpp"
