#include "iconix/grid.hpp"

#include <algorithm>

#include "iconix/error.hpp"

namespace iconix {

int semantic_level(View view) { return static_cast<int>(view) + 1; }

View view_for_level(int level) {
  if (level < 1 || level > 3) throw Error(ErrorCode::InvalidConfig, "semantic level must be 1-3");
  return kAllViews[static_cast<std::size_t>(level - 1)];
}

int row_for_view(View view) { return kGridRows - semantic_level(view); }
View view_for_row(int row) { return view_for_level(kGridRows - row); }

bool IconGrid::complete(Variant v) const {
  const auto it = cells.find(v);
  if (it == cells.end() || it->second.size() != slots.size()) return false;
  return std::all_of(it->second.begin(), it->second.end(), [](const GridCell& c) { return c.icon.has_value(); });
}

std::set<Variant> IconGrid::variants() const {
  std::set<Variant> out;
  for (const auto& [v, _] : cells) out.insert(v);
  return out;
}

std::vector<int> default_pick_ranks(int count, int columns) {
  if (columns < 1 || columns > kMaxColumns) throw Error(ErrorCode::InvalidConfig, "columns must be 1-9");
  if (count < columns) {
    throw Error(ErrorCode::InsufficientFrames,
                std::to_string(count) + " representatives for " + std::to_string(columns) + " columns");
  }
  if (columns == 1) return {(count + 1) / 2};
  std::vector<int> ranks;
  for (int j = 0; j < columns; ++j) {
    ranks.push_back(1 + (2 * j * (count - 1) + (columns - 1)) / (2 * (columns - 1)));
  }
  return ranks;
}

IconGrid assemble_grid(const std::string& concept_label, const RowSources& sources, int columns,
                       const std::optional<GridPicks>& picks) {
  if (columns < 1 || columns > kMaxColumns) throw Error(ErrorCode::InvalidConfig, "columns must be 1-9");
  IconGrid grid;
  grid.concept_label = concept_label;
  grid.columns = columns;
  for (int row = 0; row < kGridRows; ++row) {
    const View view = view_for_row(row);
    const auto& reps = sources[static_cast<std::size_t>(view)];
    if (reps.empty()) throw Error(ErrorCode::InsufficientFrames, std::string(to_string(view)) + " row has no frames");

    std::vector<const RepresentativeIcon*> chosen;
    if (picks) {
      const auto& steps = (*picks)[static_cast<std::size_t>(view)];
      if (static_cast<int>(steps.size()) != columns) {
        throw Error(ErrorCode::InvalidConfig, std::string(to_string(view)) + " picks must name " +
                                                  std::to_string(columns) + " frames");
      }
      for (std::size_t j = 0; j < steps.size(); ++j) {
        if (j > 0 && steps[j] <= steps[j - 1]) {
          throw Error(ErrorCode::NonMonotonicPicks, std::string(to_string(view)) + " picks must increase in step");
        }
        const auto it = std::find_if(reps.begin(), reps.end(),
                                     [&](const RepresentativeIcon& r) { return r.step == steps[j]; });
        if (it == reps.end()) {
          throw Error(ErrorCode::InvalidConfig, std::string(to_string(view)) + " has no representative at step " +
                                                    std::to_string(steps[j]));
        }
        chosen.push_back(&*it);
      }
    } else {
      if (static_cast<int>(reps.size()) < columns) {
        throw Error(ErrorCode::InsufficientFrames, std::string(to_string(view)) + " row has " +
                                                       std::to_string(reps.size()) + " frames for " +
                                                       std::to_string(columns) + " columns");
      }
      for (int rank : default_pick_ranks(static_cast<int>(reps.size()), columns)) {
        chosen.push_back(&reps[static_cast<std::size_t>(rank - 1)]);
      }
      for (std::size_t j = 1; j < chosen.size(); ++j) {
        if (chosen[j]->step <= chosen[j - 1]->step) {
          throw Error(ErrorCode::NonMonotonicPicks, "representatives are not ascending by step");
        }
      }
    }
    for (int col = 0; col < columns; ++col) {
      const RepresentativeIcon& r = *chosen[static_cast<std::size_t>(col)];
      grid.slots.push_back(GridSlot{row, col, semantic_level(view), col + 1, CellProvenance{view, r.step, r.layers_ref},
                                    r.icon.composite});
    }
  }
  return grid;
}

IconGrid restyle_grid(IconGrid grid, const std::set<Variant>& variants, Restyler& restyler) {
  auto run = [&](Variant variant, auto&& input_of) {
    std::vector<GridCell> cells;
    for (std::size_t i = 0; i < grid.slots.size(); ++i) {
      GridCell cell{variant, std::nullopt, {}};
      const Raster* input = input_of(i);
      if (input == nullptr) {
        cell.error = "outline cell missing";
      } else {
        try {
          cell.icon = restyler.restyle(*input, variant);
        } catch (const Error& e) {
          if (!is_backend_error(e.code())) throw;
          cell.error = e.what();
        }
      }
      cells.push_back(std::move(cell));
    }
    grid.cells[variant] = std::move(cells);
  };

  if (!grid.cells.contains(Variant::Outline)) {
    run(Variant::Outline, [&](std::size_t i) { return &grid.slots[i].composite; });
  }
  for (Variant v : {Variant::Filled, Variant::Color}) {
    if (!variants.contains(v) || grid.complete(v)) continue;
    const auto& outline = grid.cells.at(Variant::Outline);
    run(v, [&](std::size_t i) -> const Raster* { return outline[i].icon ? &*outline[i].icon : nullptr; });
  }
  return grid;
}

Rect cell_rect(int row, int col, int cell_w, int cell_h) {
  return Rect{kGutter + col * (cell_w + kGutter), kGutter + row * (cell_h + kGutter), cell_w, cell_h};
}

Raster crop(const Raster& img, const Rect& r) {
  if (r.x < 0 || r.y < 0 || r.x + r.w > img.width() || r.y + r.h > img.height()) {
    throw Error(ErrorCode::DimensionMismatch, "crop rectangle outside the image");
  }
  Raster out(r.w, r.h, img.channels());
  const int nc = img.channel_count();
  for (int y = 0; y < r.h; ++y) {
    for (int x = 0; x < r.w; ++x) {
      for (int c = 0; c < nc; ++c) out.at(x, y, c) = img.at(r.x + x, r.y + y, c);
    }
  }
  return out;
}

GridExport export_grid(const IconGrid& grid, const RasterSink& store) {
  GridExport out;
  nlohmann::json cells = nlohmann::json::array();
  nlohmann::json complete = nlohmann::json::array();
  nlohmann::json incomplete = nlohmann::json::array();
  nlohmann::json sheet_refs = nlohmann::json::object();
  for (const auto& [variant, vcells] : grid.cells) {
    if (!grid.complete(variant)) {
      incomplete.push_back(to_string(variant));
      continue;
    }
    const Raster& first = *vcells.front().icon;
    const int w = first.width();
    const int h = first.height();
    for (const GridCell& c : vcells) {
      if (c.icon->width() != w || c.icon->height() != h || c.icon->channels() != first.channels()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(to_string(variant)) + " cells differ in shape");
      }
    }
    Raster sheet(grid.columns * w + (grid.columns + 1) * kGutter, kGridRows * h + (kGridRows + 1) * kGutter,
                 first.channels(), 255);
    const int nc = sheet.channel_count();
    for (std::size_t i = 0; i < grid.slots.size(); ++i) {
      const GridSlot& s = grid.slots[i];
      const Raster& icon = *vcells[i].icon;
      const Rect r = cell_rect(s.row, s.col, w, h);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          for (int c = 0; c < nc; ++c) sheet.at(r.x + x, r.y + y, c) = icon.at(x, y, c);
        }
      }
      cells.push_back({{"row", s.row},
                       {"col", s.col},
                       {"semantic_level", s.semantic_level},
                       {"complexity_level", s.complexity_level},
                       {"variant", to_string(variant)},
                       {"png_ref", store(icon)},
                       {"rect", {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}},
                       {"provenance",
                        {{"view", to_string(s.provenance.view)},
                         {"step", s.provenance.step},
                         {"layers_ref", s.provenance.layers_ref}}}});
    }
    complete.push_back(to_string(variant));
    sheet_refs[std::string(to_string(variant))] = store(sheet);
    out.sheets.emplace(variant, std::move(sheet));
  }
  if (out.sheets.empty()) throw Error(ErrorCode::IncompleteVariant, "no style variant is complete");
  out.manifest = {{"concept", grid.concept_label}, {"rows", kGridRows},       {"columns", grid.columns},
                  {"variants", complete},          {"incomplete", incomplete}, {"sheets", sheet_refs},
                  {"cells", cells}};
  return out;
}

GridPicks grid_picks(const IconGrid& grid) {
  GridPicks picks;
  for (const GridSlot& s : grid.slots) picks[static_cast<std::size_t>(s.provenance.view)].push_back(s.provenance.step);
  return picks;
}

}  // namespace iconix
