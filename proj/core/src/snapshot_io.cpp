#include "bohmlab/snapshot_io.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw NumericalError("snapshot: truncated stream");
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const Grid& grid, double epsilon, double t,
                    const CField& values) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n(a)));
  put<double>(os, epsilon);
  put<double>(os, t);
  for (int a = 0; a < grid.dim(); ++a) {
    put<double>(os, grid.x_min(a));
    put<double>(os, grid.x_max(a));
  }
  for (const cplx& v : values) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
}

Snapshot read_snapshot(std::istream& is) {
  const auto d = get<std::uint32_t>(is);
  if (d != 1 && d != 2) throw NumericalError("snapshot: bad dimension");
  int n[2] = {0, 0};
  for (std::uint32_t a = 0; a < d; ++a) n[a] = static_cast<int>(get<std::uint32_t>(is));
  const double eps = get<double>(is);
  const double t = get<double>(is);
  AxisSpec ax[2];
  for (std::uint32_t a = 0; a < d; ++a) {
    ax[a].x_min = get<double>(is);
    ax[a].x_max = get<double>(is);
    ax[a].n = n[a];
  }
  Grid grid = (d == 1) ? Grid(ax[0]) : Grid(ax[0], ax[1]);
  CField values(grid.size());
  for (auto& v : values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v = cplx(re, im);
  }
  return Snapshot{std::move(grid), eps, t, std::move(values)};
}

void write_timeline(const std::string& path, const Timeline& tl) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("snapshot: cannot open " + path + " for writing");
  put<std::uint64_t>(os, tl.frames.size());
  for (const Frame& f : tl.frames) write_snapshot(os, tl.grid, tl.epsilon, f.t, f.values);
}

Timeline read_timeline(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("snapshot: cannot open " + path);
  const auto count = get<std::uint64_t>(is);
  if (count == 0) throw NumericalError("snapshot: empty timeline");
  Snapshot first = read_snapshot(is);
  Timeline tl(first.grid, first.epsilon);
  tl.frames.push_back({first.t, std::move(first.values)});
  for (std::uint64_t k = 1; k < count; ++k) {
    Snapshot s = read_snapshot(is);
    if (!(s.grid == tl.grid)) throw NumericalError("snapshot: grid mismatch across frames");
    tl.frames.push_back({s.t, std::move(s.values)});
  }
  if (tl.frames.size() >= 2) tl.frame_dt = tl.frames[1].t - tl.frames[0].t;
  return tl;
}

}  // namespace bohmlab
