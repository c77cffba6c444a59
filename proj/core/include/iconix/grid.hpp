#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/artifacts.hpp"
#include "iconix/backends.hpp"
#include "iconix/layering.hpp"
#include "iconix/types.hpp"

namespace iconix {

inline constexpr int kGridRows = 3;
inline constexpr int kDefaultColumns = 3;
inline constexpr int kMaxColumns = 9;
inline constexpr int kGutter = 8;

// Comparative = 1, Microscopic = 2, Macroscopic = 3.
int semantic_level(View view);
View view_for_level(int level);
// Row 0 is the top row and carries the richest level.
int row_for_view(View view);
View view_for_row(int row);

struct RepresentativeIcon {
  int step;
  LayeredIcon icon;
  std::string layers_ref;  // layer manifest reference, may be empty
};

// Indexed by view: Comparative, Microscopic, Macroscopic. Each list is
// ascending by step.
using RowSources = std::array<std::vector<RepresentativeIcon>, 3>;
// Chosen step indices per view, same indexing.
using GridPicks = std::array<std::vector<int>, 3>;

struct CellProvenance {
  View view;
  int step;
  std::string layers_ref;
};

// A grid position before styling: the layered composite it starts from.
struct GridSlot {
  int row;
  int col;
  int semantic_level;
  int complexity_level;  // 1-based column ordinal
  CellProvenance provenance;
  Raster composite;
};

struct GridCell {
  Variant variant;
  std::optional<Raster> icon;  // empty when the restyle call failed
  std::string error;
};

struct IconGrid {
  std::string concept_label;
  int columns = kDefaultColumns;
  std::vector<GridSlot> slots;               // row-major
  std::map<Variant, std::vector<GridCell>> cells;  // aligned with slots

  int rows() const { return kGridRows; }
  const GridSlot& slot(int row, int col) const { return slots.at(static_cast<std::size_t>(row * columns + col)); }
  bool complete(Variant v) const;
  std::set<Variant> variants() const;
};

// 1-based ranks among `count` representatives for `columns` evenly spaced
// picks: round(1 + j (count - 1) / (columns - 1)), or ceil(count / 2) for one
// column. Throws InsufficientFrames if count < columns.
std::vector<int> default_pick_ranks(int count, int columns);

// Throws InsufficientFrames, NonMonotonicPicks, InvalidConfig.
IconGrid assemble_grid(const std::string& concept_label, const RowSources& sources, int columns = kDefaultColumns,
                       const std::optional<GridPicks>& picks = std::nullopt);

// Produces every requested variant. Outline comes from the layered
// composites; Filled and Color come from the Outline cells, so Outline is
// always produced. Existing variants are kept. Backend failures are recorded
// per cell.
IconGrid restyle_grid(IconGrid grid, const std::set<Variant>& variants, Restyler& restyler);

struct Rect {
  int x;
  int y;
  int w;
  int h;
};

// Pixel rectangle of a cell in a sheet of `cell_w` x `cell_h` tiles.
Rect cell_rect(int row, int col, int cell_w, int cell_h);
Raster crop(const Raster& img, const Rect& r);

struct GridExport {
  std::map<Variant, Raster> sheets;
  nlohmann::json manifest;
};

// Tiles each complete variant row-major with white gutters. Incomplete
// variants are listed in the manifest but get no sheet. Throws
// IncompleteVariant when no variant is complete.
GridExport export_grid(const IconGrid& grid, const RasterSink& store);

// Selected step indices per view, same indexing as GridPicks.
GridPicks grid_picks(const IconGrid& grid);

}  // namespace iconix
