#include "fixtures.hpp"

namespace iconix::fixtures {

using C = Category;

const std::map<std::string, ScoreFixture>& scores() {
  static const std::map<std::string, ScoreFixture> table{
      // hope
      {"phoenix", {{4, 5, 6, 8}, C::ConcreteObject, "a phoenix rises from its own ashes, a picture of renewal after loss"}},
      {"sunrise", {{4, 7, 7, 8}, C::ConcreteObject, "every sunrise opens a new day and another chance to start over"}},
      {"lighthouse", {{5, 6, 7, 8}, C::ConcreteObject, "a lighthouse keeps shining so ships can find their way home in the dark"}},
      {"seed", {{5, 7, 6, 8}, C::ConcreteObject, "a seed carries the promise of growth: something small today that can become much more"}},
      {"rainbow", {{4, 7, 7, 7}, C::ConcreteObject, "a rainbow appears once the storm has passed"}},
      {"anchor", {{5, 6, 6, 6}, C::ConcreteObject, "an anchor holds steady when the water is rough"}},
      {"dove", {{5, 6, 6, 7}, C::ConcreteObject, "the dove returning with a branch signals that better days are near"}},
      {"candle", {{5, 7, 6, 7}, C::ConcreteObject, "a single candle pushes back a whole room of darkness"}},
      {"butterfly", {{5, 7, 7, 6}, C::ConcreteObject, "a butterfly emerges changed from its cocoon"}},
      {"sprout", {{5, 5, 6, 8}, C::ConcreteObject, "a sprout is the first visible sign that a seed took root"}},
      {"flower", {{5, 7, 7, 6}, C::ConcreteObject, "a flower is growth that finally blooms"}},
      {"sun", {{5, 7, 7, 6}, C::ConcreteObject, "the sun always comes back the next morning"}},
      {"lantern", {{5, 6, 6, 6}, C::ConcreteObject, "a lantern carries light into unknown places"}},
      {"optimism", {{1, 6, 2, 8}, C::AbstractNoun, "optimism names the feeling itself rather than an object"}},
      {"plant", {{4, 7, 5, 5}, C::SuperordinateCategory, "plant is a broad category, not a single object"}},
      {"praying", {{2, 6, 5, 7}, C::IntangibleAction, "praying is an action with no fixed visual form"}},
      // fast food
      {"hamburger", {{5, 7, 7, 9}, C::ConcreteObject, "the hamburger is the most recognizable fast food item"}},
      {"french fry", {{5, 7, 7, 8}, C::ConcreteObject, "fries in a carton are served with nearly every fast food meal"}},
      {"cheese slice", {{5, 6, 6, 7}, C::ConcreteObject, "a melted cheese slice is a staple topping of fast food"}},
      {"soda cup", {{5, 7, 6, 6}, C::ConcreteObject, "a lidded cup with a straw completes the combo meal"}},
      {"hot dog", {{5, 7, 7, 8}, C::ConcreteObject, "a hot dog is quick street food eaten by hand"}},
      {"pizza slice", {{5, 7, 7, 8}, C::ConcreteObject, "a single pizza slice is grab-and-go food"}},
      {"taco", {{5, 6, 6, 7}, C::ConcreteObject, "tacos are a fast, handheld meal"}},
      {"cheeseburger", {{5, 6, 7, 8}, C::ConcreteObject, "a cheeseburger is the hamburger's most common variation"}},
      {"food", {{3, 7, 5, 6}, C::SuperordinateCategory, "food is the whole category rather than one item"}},
      {"convenience", {{1, 6, 2, 8}, C::AbstractNoun, "convenience is the quality fast food sells, not a thing"}},
      {"eating", {{2, 7, 5, 6}, C::IntangibleAction, "eating is an activity rather than an object"}},
  };
  return table;
}

const std::map<std::string, ExpansionFixture>& expansions() {
  static const std::map<std::string, ExpansionFixture> table{
      {"hope",
       {{"sunrise", "seed", "rainbow", "anchor", "optimism", "plant"},
        {"phoenix", "lighthouse", "dove", "candle", "butterfly", "praying"}}},
      {"fast food",
       {{"hamburger", "french fry", "cheese slice", "soda cup", "food"},
        {"hot dog", "pizza slice", "taco", "convenience", "eating"}}},
      {"seed", {{"sprout", "flower"}, {"plant"}}},
      {"sunrise", {{"sun"}, {}}},
      {"lighthouse", {{}, {"lantern"}}},
      {"hamburger", {{"cheeseburger"}, {"french fry"}}},
  };
  return table;
}

const std::map<std::string, std::vector<RelationFixture>>& relations() {
  using K = KbSource;
  static const std::map<std::string, std::vector<RelationFixture>> table{
      {"hamburger",
       {{"/r/IsA", "fast food", 2.0, K::ConceptNet},
        {"/r/IsA", "sandwich", 1.8, K::ConceptNet},
        {"hypernym", "food", 1.2, K::Lexicon},
        {"hyponym", "cheeseburger", 1.1, K::Lexicon},
        {"synonym", "burger", 1.6, K::Lexicon},
        {"/r/HasA", "bun", 1.5, K::ConceptNet},
        {"/r/PartOf", "bun", 1.0, K::ConceptNet},
        {"/r/HasA", "patty", 1.4, K::ConceptNet},
        {"/r/HasA", "lettuce", 0.9, K::ConceptNet},
        {"/r/HasA", "cheese", 0.8, K::ConceptNet},
        {"/r/HasProperty", "round", 0.7, K::ConceptNet},
        {"/r/AtLocation", "restaurant", 1.0, K::ConceptNet},
        {"/r/AtLocation", "fast food restaurant", 1.3, K::ConceptNet},
        {"/r/UsedFor", "eating", 1.1, K::ConceptNet},
        {"/r/RelatedTo", "french fry", 0.9, K::ConceptNet},
        {"/r/RelatedTo", "soda", 0.6, K::ConceptNet},
        {"/r/HasContext", "american cuisine", 0.5, K::ConceptNet}}},
      {"lighthouse",
       {{"/r/IsA", "tower", 1.9, K::ConceptNet},
        {"hypernym", "beacon", 1.4, K::Lexicon},
        {"P31", "building", 1.0, K::Wikidata},
        {"/r/HasA", "lamp", 1.6, K::ConceptNet},
        {"/r/HasA", "gallery", 0.9, K::ConceptNet},
        {"/r/HasProperty", "striped", 0.8, K::ConceptNet},
        {"/r/AtLocation", "coast", 1.7, K::ConceptNet},
        {"/r/UsedFor", "guiding ships", 1.5, K::ConceptNet},
        {"/r/RelatedTo", "sea", 1.2, K::ConceptNet},
        {"/r/SymbolOf", "guidance", 1.0, K::ConceptNet}}},
      {"seed",
       {{"/r/IsA", "plant organ", 1.3, K::ConceptNet},
        {"hyponym", "acorn", 1.1, K::Lexicon},
        {"/r/HasA", "shell", 1.2, K::ConceptNet},
        {"/r/HasA", "embryo", 1.0, K::ConceptNet},
        {"/r/AtLocation", "soil", 1.6, K::ConceptNet},
        {"/r/UsedFor", "planting", 1.4, K::ConceptNet},
        {"/r/SymbolOf", "growth", 1.1, K::ConceptNet},
        {"/r/SimilarTo", "sprout", 0.7, K::ConceptNet}}},
      {"sunrise",
       {{"/r/IsA", "time of day", 1.5, K::ConceptNet},
        {"synonym", "dawn", 1.8, K::Lexicon},
        {"/r/HasA", "sun", 1.6, K::ConceptNet},
        {"/r/HasProperty", "orange", 0.9, K::ConceptNet},
        {"/r/AtLocation", "horizon", 1.7, K::ConceptNet},
        {"/r/RelatedTo", "morning", 1.3, K::ConceptNet}}},
      {"phoenix",
       {{"P31", "mythical creature", 1.6, K::Wikidata},
        {"/r/IsA", "bird", 1.4, K::ConceptNet},
        {"/r/HasA", "wings", 1.5, K::ConceptNet},
        {"/r/HasA", "flames", 1.3, K::ConceptNet},
        {"/r/AtLocation", "mythology", 1.0, K::ConceptNet},
        {"/r/SymbolOf", "rebirth", 1.7, K::ConceptNet}}},
  };
  return table;
}

}  // namespace iconix::fixtures
