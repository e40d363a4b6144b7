#pragma once

#include "lpa/error.hpp"
#include "lpa/field.hpp"
#include "lpa/digraph.hpp"
#include "lpa/graded_quotient.hpp"
#include "lpa/ideals.hpp"
#include "lpa/quotients.hpp"
#include "lpa/ktheory.hpp"
#include "lpa/io.hpp"
