#pragma once

#include "egteq/descartes.hpp"
#include "egteq/dilemma.hpp"
#include "egteq/equilibria.hpp"
#include "egteq/expected.hpp"
#include "egteq/game.hpp"
#include "egteq/io.hpp"
#include "egteq/parallel.hpp"
#include "egteq/polynomial.hpp"
#include "egteq/random_games.hpp"
#include "egteq/rational.hpp"
#include "egteq/rng.hpp"
#include "egteq/sturm.hpp"
