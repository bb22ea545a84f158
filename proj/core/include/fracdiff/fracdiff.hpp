#pragma once

#include "fracdiff/diffusive.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/expsum.hpp"
#include "fracdiff/fast_stepping.hpp"
#include "fracdiff/gauss_laguerre.hpp"
#include "fracdiff/history_split.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/special_functions.hpp"
#include "fracdiff/trace.hpp"
