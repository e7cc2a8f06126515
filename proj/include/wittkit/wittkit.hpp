#pragma once

#include "arith.hpp"
#include "cyclicbar.hpp"
#include "divisor.hpp"
#include "kgroups.hpp"
#include "serialize.hpp"
#include "snf.hpp"
#include "truncation.hpp"
#include "witt.hpp"
