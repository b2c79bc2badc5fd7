#pragma once

#include <iosfwd>
#include <string>

#include "bohmlab/propagator.hpp"

namespace bohmlab {

/// Binary snapshot of one frame.  Layout (little-endian):
///   u32 d, u32 n per axis, f64 epsilon, f64 t,
///   f64 x_min/x_max per axis (domain, needed to rebuild the grid),
///   payload: n interleaved re/im f64 pairs.
void write_snapshot(std::ostream& os, const Grid& grid, double epsilon, double t,
                    const CField& values);

struct Snapshot {
  Grid grid;
  double epsilon;
  double t;
  CField values;
};

Snapshot read_snapshot(std::istream& is);

/// Whole timeline: u64 frame count followed by that many snapshots.
void write_timeline(const std::string& path, const Timeline& tl);
Timeline read_timeline(const std::string& path);

}  // namespace bohmlab
