#pragma once

// Umbrella header.

#include "cobar.hpp"
#include "cochain.hpp"
#include "cohomology_functor.hpp"
#include "common.hpp"
#include "ext.hpp"
#include "family.hpp"
#include "fp.hpp"
#include "functor.hpp"
#include "fusion.hpp"
#include "group.hpp"
#include "group_cohomology.hpp"
#include "hom.hpp"
#include "json_io.hpp"
#include "limits.hpp"
#include "orbit.hpp"
#include "perm.hpp"
#include "presets.hpp"
#include "rep.hpp"
#include "rep_graph.hpp"
#include "verify.hpp"
