#pragma once

// Umbrella header.
#include "maxclass5/classify.hpp"
#include "maxclass5/consistency.hpp"
#include "maxclass5/element.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/export.hpp"
#include "maxclass5/field_data.hpp"
#include "maxclass5/isomorphism.hpp"
#include "maxclass5/json_io.hpp"
#include "maxclass5/params.hpp"
#include "maxclass5/pc_group.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/subgroup.hpp"
#include "maxclass5/sweep.hpp"
#include "maxclass5/transfer.hpp"
