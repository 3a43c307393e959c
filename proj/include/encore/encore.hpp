#pragma once

#include "encore/btopt.hpp"
#include "encore/composer.hpp"
#include "encore/dataset.hpp"
#include "encore/dataset_io.hpp"
#include "encore/entropy.hpp"
#include "encore/error.hpp"
#include "encore/evaluator.hpp"
#include "encore/numeric.hpp"
#include "encore/rng.hpp"
#include "encore/rules_catalog.hpp"
#include "encore/stats.hpp"
#include "encore/synthgen.hpp"
