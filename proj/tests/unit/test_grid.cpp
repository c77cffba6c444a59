#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "iconix/artifacts.hpp"
#include "iconix/error.hpp"
#include "iconix/grid.hpp"

using namespace iconix;

namespace {

// `count` representatives per view at steps 3, 6, 9, ... with distinct images.
RowSources make_sources(int count, int size = 32) {
  RowSources sources;
  MockSegmenter seg;
  for (View v : kAllViews) {
    for (int i = 0; i < count; ++i) {
      Raster img = test::gray(size, size, 255);
      test::fill_disk(img, size / 2, size / 2, 2 + (i + static_cast<int>(v)) % (size / 3), 40);
      sources[static_cast<std::size_t>(v)].push_back(
          RepresentativeIcon{3 * (i + 1), build_layered_icon(img, seg), "layers-" + std::to_string(i)});
    }
  }
  return sources;
}

// Records every input so tests can check what each variant was derived from.
class RecordingRestyler : public Restyler {
 public:
  Raster restyle(const Raster& img, Variant variant) override {
    inputs[variant].push_back(img);
    return inner.restyle(img, variant);
  }
  std::map<Variant, std::vector<Raster>> inputs;
  MockRestyler inner;
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

int round_half_up_ratio(int num, int den) { return (2 * num + den) / (2 * den); }

}  // namespace

TEST(GridAxes, LevelsAndRows) {
  EXPECT_EQ(semantic_level(View::Comparative), 1);
  EXPECT_EQ(semantic_level(View::Microscopic), 2);
  EXPECT_EQ(semantic_level(View::Macroscopic), 3);
  EXPECT_EQ(view_for_row(0), View::Macroscopic);
  EXPECT_EQ(view_for_row(2), View::Comparative);
  for (View v : kAllViews) {
    EXPECT_EQ(view_for_row(row_for_view(v)), v);
    EXPECT_EQ(view_for_level(semantic_level(v)), v);
  }
}

TEST(PickRanks, NineRepresentatives) {
  EXPECT_EQ(default_pick_ranks(9, 3), (std::vector<int>{1, 5, 9}));
  EXPECT_EQ(default_pick_ranks(9, 1), (std::vector<int>{5}));
  EXPECT_EQ(default_pick_ranks(9, 9), (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(code_of([] { default_pick_ranks(2, 3); }), ErrorCode::InsufficientFrames);
}

TEST(PickRanks, EvenSpacingOracle) {
  for (int count = 1; count <= 30; ++count) {
    for (int c = 1; c <= std::min(count, kMaxColumns); ++c) {
      const auto ranks = default_pick_ranks(count, c);
      ASSERT_EQ(ranks.size(), static_cast<std::size_t>(c));
      for (int j = 0; j < c; ++j) {
        const int want = c == 1 ? (count + 1) / 2 : 1 + round_half_up_ratio(j * (count - 1), c - 1);
        EXPECT_EQ(ranks[static_cast<std::size_t>(j)], want) << count << "/" << c;
        if (j > 0) EXPECT_GT(ranks[static_cast<std::size_t>(j)], ranks[static_cast<std::size_t>(j - 1)]);
      }
      if (c > 1) {
        EXPECT_EQ(ranks.front(), 1);
        EXPECT_EQ(ranks.back(), count);
      }
    }
  }
}

TEST(AssembleGrid, DefaultPicksAndAxes) {
  const RowSources sources = make_sources(9);
  const IconGrid grid = assemble_grid("hope", sources);
  ASSERT_EQ(grid.slots.size(), 9u);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      const GridSlot& s = grid.slot(row, col);
      EXPECT_EQ(s.row, row);
      EXPECT_EQ(s.col, col);
      EXPECT_EQ(s.semantic_level, 3 - row);
      EXPECT_EQ(s.complexity_level, col + 1);
      EXPECT_EQ(s.provenance.view, view_for_row(row));
      const int rank = std::vector<int>{1, 5, 9}[static_cast<std::size_t>(col)];
      const auto& rep = sources[static_cast<std::size_t>(s.provenance.view)][static_cast<std::size_t>(rank - 1)];
      EXPECT_EQ(s.provenance.step, rep.step);
      EXPECT_EQ(s.provenance.layers_ref, rep.layers_ref);
      EXPECT_EQ(s.composite, rep.icon.composite);
      if (col > 0) EXPECT_GT(s.provenance.step, grid.slot(row, col - 1).provenance.step);
    }
  }
  EXPECT_TRUE(grid.cells.empty());
}

TEST(AssembleGrid, SingleColumnTakesTheMiddle) {
  const IconGrid grid = assemble_grid("hope", make_sources(9), 1);
  for (int row = 0; row < 3; ++row) EXPECT_EQ(grid.slot(row, 0).provenance.step, 15);
}

TEST(AssembleGrid, ExplicitPicks) {
  const RowSources sources = make_sources(9);
  GridPicks picks{{{3, 12, 27}, {6, 9, 24}, {3, 6, 9}}};
  const IconGrid grid = assemble_grid("hope", sources, 3, picks);
  EXPECT_EQ(grid_picks(grid), picks);
  EXPECT_EQ(grid.slot(0, 2).provenance.step, 9);   // Macroscopic row
  EXPECT_EQ(grid.slot(2, 1).provenance.step, 12);  // Comparative row

  GridPicks backwards = picks;
  backwards[1] = {24, 9, 6};
  EXPECT_EQ(code_of([&] { assemble_grid("hope", sources, 3, backwards); }), ErrorCode::NonMonotonicPicks);
  GridPicks repeated = picks;
  repeated[0] = {3, 3, 6};
  EXPECT_EQ(code_of([&] { assemble_grid("hope", sources, 3, repeated); }), ErrorCode::NonMonotonicPicks);
  GridPicks missing = picks;
  missing[2] = {3, 4, 9};
  EXPECT_EQ(code_of([&] { assemble_grid("hope", sources, 3, missing); }), ErrorCode::InvalidConfig);
  GridPicks short_row = picks;
  short_row[2] = {3, 6};
  EXPECT_EQ(code_of([&] { assemble_grid("hope", sources, 3, short_row); }), ErrorCode::InvalidConfig);
}

TEST(AssembleGrid, Errors) {
  EXPECT_EQ(code_of([] { assemble_grid("hope", make_sources(2)); }), ErrorCode::InsufficientFrames);
  EXPECT_EQ(code_of([] { assemble_grid("hope", make_sources(9), 0); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { assemble_grid("hope", make_sources(9), 10); }), ErrorCode::InvalidConfig);
  RowSources gap = make_sources(9);
  gap[1].clear();
  EXPECT_EQ(code_of([&] { assemble_grid("hope", gap); }), ErrorCode::InsufficientFrames);
}

TEST(RestyleGrid, OutlineOnlyIsNineCalls) {
  test::CountingRestyler restyler(std::make_shared<MockRestyler>());
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9)), {Variant::Outline}, restyler);
  EXPECT_EQ(restyler.total(), 9);
  EXPECT_EQ(restyler.calls(Variant::Outline), 9);
  EXPECT_TRUE(grid.complete(Variant::Outline));
  EXPECT_EQ(grid.variants(), std::set<Variant>{Variant::Outline});
  EXPECT_FALSE(grid.cells.contains(Variant::Filled));
  EXPECT_FALSE(grid.cells.contains(Variant::Color));
}

TEST(RestyleGrid, AllVariantsIsTwentySevenCalls) {
  test::CountingRestyler restyler(std::make_shared<MockRestyler>());
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9)),
                                     {Variant::Outline, Variant::Filled, Variant::Color}, restyler);
  EXPECT_EQ(restyler.total(), 27);
  for (Variant v : kAllVariants) EXPECT_TRUE(grid.complete(v));
  // Adding variants that already exist costs nothing.
  const IconGrid again = restyle_grid(grid, {Variant::Filled, Variant::Color}, restyler);
  EXPECT_EQ(restyler.total(), 27);
}

TEST(RestyleGrid, FilledAndColorDeriveFromOutline) {
  RecordingRestyler restyler;
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9)),
                                     {Variant::Filled, Variant::Color}, restyler);
  const auto& outline = grid.cells.at(Variant::Outline);
  ASSERT_EQ(restyler.inputs[Variant::Outline].size(), 9u);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(restyler.inputs[Variant::Outline][i], grid.slots[i].composite);
    EXPECT_EQ(restyler.inputs[Variant::Filled][i], *outline[i].icon);
    EXPECT_EQ(restyler.inputs[Variant::Color][i], *outline[i].icon);
  }
}

TEST(RestyleGrid, FailuresStayInTheirCells) {
  test::CountingRestyler restyler(std::make_shared<MockRestyler>());
  restyler.failures[Variant::Outline] = {4};
  restyler.failures[Variant::Color] = {0};
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9)), {Variant::Filled, Variant::Color},
                                     restyler);
  EXPECT_FALSE(grid.complete(Variant::Outline));
  EXPECT_FALSE(grid.complete(Variant::Filled));
  EXPECT_FALSE(grid.complete(Variant::Color));
  // Variant closure: nothing derived where the outline is missing.
  for (Variant v : {Variant::Filled, Variant::Color}) {
    const auto& cells = grid.cells.at(v);
    EXPECT_FALSE(cells[4].icon.has_value());
    EXPECT_FALSE(cells[4].error.empty());
  }
  EXPECT_FALSE(grid.cells.at(Variant::Color)[0].icon.has_value());
  EXPECT_TRUE(grid.cells.at(Variant::Filled)[0].icon.has_value());
  EXPECT_EQ(restyler.calls(Variant::Filled), 8);
}

TEST(RestyleGrid, MockIsDeterministic) {
  MockRestyler restyler;
  const IconGrid base = assemble_grid("hope", make_sources(9));
  const IconGrid a = restyle_grid(base, {Variant::Filled, Variant::Color}, restyler);
  const IconGrid b = restyle_grid(base, {Variant::Filled, Variant::Color}, restyler);
  for (Variant v : kAllVariants) {
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(*a.cells.at(v)[i].icon, *b.cells.at(v)[i].icon);
  }
}

TEST(ExportGrid, SheetSizeAndLosslessCrop) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  MockRestyler restyler;
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9, 256)),
                                     {Variant::Outline, Variant::Filled, Variant::Color}, restyler);
  const GridExport out = export_grid(grid, store.sink());
  ASSERT_EQ(out.sheets.size(), 3u);
  for (const auto& [variant, sheet] : out.sheets) {
    EXPECT_EQ(sheet.width(), 800);
    EXPECT_EQ(sheet.height(), 800);
  }
  const auto& cells = out.manifest.at("cells");
  EXPECT_EQ(cells.size(), 27u);
  for (const auto& c : cells) {
    const Variant v = *parse_variant(c.at("variant").get<std::string>());
    const Rect r{c["rect"]["x"], c["rect"]["y"], c["rect"]["w"], c["rect"]["h"]};
    const int row = c.at("row");
    const int col = c.at("col");
    const Raster cropped = crop(out.sheets.at(v), r);
    EXPECT_EQ(cropped, *grid.cells.at(v)[static_cast<std::size_t>(row * 3 + col)].icon);
    EXPECT_EQ(store.get_raster(c.at("png_ref")), cropped);
    EXPECT_EQ(c.at("semantic_level"), 3 - row);
    EXPECT_EQ(c.at("complexity_level"), col + 1);
    EXPECT_EQ(c.at("provenance").at("view"), to_string(view_for_row(row)));
  }
  for (const auto& [name, ref] : out.manifest.at("sheets").items()) {
    EXPECT_EQ(store.get_raster(ref), out.sheets.at(*parse_variant(name)));
  }
}

TEST(ExportGrid, GuttersAreWhite) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  MockRestyler restyler;
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9, 16), 2), {Variant::Outline}, restyler);
  const GridExport out = export_grid(grid, store.sink());
  const Raster& sheet = out.sheets.at(Variant::Outline);
  EXPECT_EQ(sheet.width(), 2 * 16 + 3 * 8);
  EXPECT_EQ(sheet.height(), 3 * 16 + 4 * 8);
  for (int y = 0; y < sheet.height(); ++y) {
    for (int x = 0; x < 8; ++x) EXPECT_EQ(sheet.at(x, y), 255);
  }
}

TEST(ExportGrid, IncompleteVariants) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  test::CountingRestyler restyler(std::make_shared<MockRestyler>());
  restyler.failures[Variant::Filled] = {2};
  const IconGrid grid = restyle_grid(assemble_grid("hope", make_sources(9)), {Variant::Filled}, restyler);
  const GridExport out = export_grid(grid, store.sink());
  EXPECT_EQ(out.sheets.size(), 1u);
  EXPECT_EQ(out.manifest.at("incomplete"), nlohmann::json::array({"filled"}));
  EXPECT_EQ(out.manifest.at("cells").size(), 9u);

  test::CountingRestyler broken(std::make_shared<MockRestyler>());
  broken.failures[Variant::Outline] = {0};
  const IconGrid bad = restyle_grid(assemble_grid("hope", make_sources(9)), {Variant::Outline}, broken);
  EXPECT_EQ(code_of([&] { export_grid(bad, store.sink()); }), ErrorCode::IncompleteVariant);
  EXPECT_EQ(code_of([&] { export_grid(assemble_grid("hope", make_sources(9)), store.sink()); }),
            ErrorCode::IncompleteVariant);
}

TEST(ExportGrid, RandomShapesRoundTrip) {
  std::mt19937_64 rng(test::env_seed());
  test::TempDir dir;
  ArtifactStore store(dir.path());
  MockRestyler restyler;
  for (int trial = 0; trial < 6; ++trial) {
    const int columns = std::uniform_int_distribution<int>(1, 9)(rng);
    const int count = std::uniform_int_distribution<int>(columns, 12)(rng);
    const int size = std::uniform_int_distribution<int>(8, 24)(rng);
    const IconGrid grid = restyle_grid(assemble_grid("x", make_sources(count, size), columns), {Variant::Color}, restyler);
    const GridExport out = export_grid(grid, store.sink());
    EXPECT_EQ(out.manifest.at("cells").size(), static_cast<std::size_t>(2 * 3 * columns));
    for (const auto& c : out.manifest.at("cells")) {
      const Variant v = *parse_variant(c.at("variant").get<std::string>());
      const Rect r{c["rect"]["x"], c["rect"]["y"], c["rect"]["w"], c["rect"]["h"]};
      const std::size_t i = static_cast<std::size_t>(c.at("row").get<int>() * columns + c.at("col").get<int>());
      EXPECT_EQ(crop(out.sheets.at(v), r), *grid.cells.at(v)[i].icon);
    }
  }
}
