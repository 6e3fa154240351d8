#pragma once

#include "structcode/core.hpp"
#include "structcode/io.hpp"
#include "structcode/oracle.hpp"
#include "structcode/shelah.hpp"
#include "structcode/search.hpp"
#include "structcode/reduction_f.hpp"
#include "structcode/coding_g.hpp"
#include "structcode/ef_games.hpp"
#include "structcode/limit_builder.hpp"
#include "structcode/functors.hpp"
#include "structcode/corpus.hpp"
#include "structcode/acceptance.hpp"
