#pragma once

#include "spfl/coalition.hpp"
#include "spfl/decompose.hpp"
#include "spfl/enumerate.hpp"
#include "spfl/error.hpp"
#include "spfl/example1.hpp"
#include "spfl/exhaustive.hpp"
#include "spfl/extorder.hpp"
#include "spfl/io.hpp"
#include "spfl/location.hpp"
#include "spfl/oracles.hpp"
#include "spfl/prefdomain.hpp"
#include "spfl/range.hpp"
#include "spfl/rulekernel.hpp"
#include "spfl/table.hpp"
