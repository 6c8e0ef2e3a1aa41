#pragma once

#include "offcon/commands.hpp"
#include "offcon/decompositions.hpp"
#include "offcon/event_file.hpp"
#include "offcon/multigraph.hpp"
#include "offcon/oracle.hpp"
#include "offcon/query_mode.hpp"
#include "offcon/reducers.hpp"
#include "offcon/spqr_tree.hpp"
#include "offcon/static_query.hpp"
#include "offcon/timeline.hpp"
