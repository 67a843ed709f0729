#pragma once

#include "twdnnf/bits.hpp"
#include "twdnnf/bounds.hpp"
#include "twdnnf/bp.hpp"
#include "twdnnf/branch_decomposition.hpp"
#include "twdnnf/cnf.hpp"
#include "twdnnf/compile.hpp"
#include "twdnnf/graph.hpp"
#include "twdnnf/io.hpp"
#include "twdnnf/nnf.hpp"
#include "twdnnf/rectangle.hpp"
#include "twdnnf/resolution.hpp"
#include "twdnnf/separators.hpp"
#include "twdnnf/treewidth.hpp"
#include "twdnnf/tseitin.hpp"
