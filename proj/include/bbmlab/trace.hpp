#pragma once

#include <vector>

#include "bbmlab/field.hpp"

namespace bbmlab {

struct Snapshot {
    double time;
    Field field;
};

/// Time-ordered snapshots on one grid.
using Trace = std::vector<Snapshot>;

}  // namespace bbmlab
