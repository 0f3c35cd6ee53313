#pragma once

// Umbrella header: the full solver library.

#include "stackamb/commitment.hpp"
#include "stackamb/errors.hpp"
#include "stackamb/example_games.hpp"
#include "stackamb/game.hpp"
#include "stackamb/gaps.hpp"
#include "stackamb/hardness.hpp"
#include "stackamb/io.hpp"
#include "stackamb/landscape.hpp"
#include "stackamb/lp.hpp"
#include "stackamb/rational.hpp"
#include "stackamb/responses.hpp"
#include "stackamb/solvers.hpp"
