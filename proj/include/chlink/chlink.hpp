#pragma once

#include "chlink/error.hpp"
#include "chlink/groupword.hpp"
#include "chlink/invariants.hpp"
#include "chlink/lieseries.hpp"
#include "chlink/lyndon.hpp"
#include "chlink/ncseries.hpp"
#include "chlink/rational.hpp"
#include "chlink/stringlink.hpp"
