#pragma once

#include "varlab/words.hpp"
#include "varlab/scalar.hpp"
#include "varlab/linalg.hpp"
#include "varlab/poly.hpp"
#include "varlab/parse.hpp"
#include "varlab/variety.hpp"
#include "varlab/tideal.hpp"
#include "varlab/coherence.hpp"
#include "varlab/flatkappa.hpp"
#include "varlab/fdalg.hpp"
