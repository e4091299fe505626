#pragma once

#include "nbx/biclique.hpp"
#include "nbx/bounds.hpp"
#include "nbx/constructions.hpp"
#include "nbx/families.hpp"
#include "nbx/family.hpp"
#include "nbx/integer.hpp"
#include "nbx/json_io.hpp"
#include "nbx/search.hpp"
#include "nbx/ternary_string.hpp"
