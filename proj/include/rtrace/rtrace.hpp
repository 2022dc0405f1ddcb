#pragma once

#include "rtrace/errors.hpp"
#include "rtrace/integer.hpp"
#include "rtrace/smith.hpp"
#include "rtrace/group.hpp"
#include "rtrace/group_ring.hpp"
#include "rtrace/classes.hpp"
#include "rtrace/chain_trace.hpp"
#include "rtrace/local_trace.hpp"
#include "rtrace/axioms.hpp"
#include "rtrace/io.hpp"
