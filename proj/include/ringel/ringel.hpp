#pragma once

#include "ringel/blowup.hpp"
#include "ringel/cayley.hpp"
#include "ringel/certificate.hpp"
#include "ringel/cn_oracle.hpp"
#include "ringel/corollary.hpp"
#include "ringel/decomposition.hpp"
#include "ringel/error.hpp"
#include "ringel/group.hpp"
#include "ringel/matching.hpp"
#include "ringel/rainbow.hpp"
#include "ringel/sampling.hpp"
#include "ringel/seed.hpp"
#include "ringel/split.hpp"
#include "ringel/target.hpp"
#include "ringel/tree.hpp"
#include "ringel/tree_families.hpp"
