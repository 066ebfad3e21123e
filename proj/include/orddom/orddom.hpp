#pragma once

#include "antielite.hpp"
#include "arith.hpp"
#include "bigint.hpp"
#include "dominance.hpp"
#include "eisenstein.hpp"
#include "errors.hpp"
#include "quadfield.hpp"
#include "record.hpp"
