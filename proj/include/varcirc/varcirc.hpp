#pragma once

// varcirc: syntactic monoids, profinite identities, constant-size circuit
// families over commutative gate bases, block-product translations and
// finite-scale separation search for regular and circuit languages.

#include "varcirc/alphabet.hpp"
#include "varcirc/blocklang.hpp"
#include "varcirc/catalog.hpp"
#include "varcirc/circuit.hpp"
#include "varcirc/dfa.hpp"
#include "varcirc/json_io.hpp"
#include "varcirc/monoid.hpp"
#include "varcirc/oracle.hpp"
#include "varcirc/partition.hpp"
#include "varcirc/separation.hpp"
#include "varcirc/term.hpp"
