#pragma once

#include "errors.hpp"
#include "poly.hpp"
#include "ratfun.hpp"
#include "series.hpp"
#include "univariate.hpp"
#include "linalg.hpp"
#include "root_data.hpp"
#include "series_formulas.hpp"
#include "hn_recursion.hpp"
#include "vhs.hpp"
