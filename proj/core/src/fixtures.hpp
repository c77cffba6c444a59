#pragma once

#include <map>
#include <string>
#include <vector>

#include "iconix/types.hpp"

namespace iconix::fixtures {

struct ScoreFixture {
  AttributeScores scores;
  Category category;
  const char* interpretation;
};

struct ExpansionFixture {
  std::vector<const char*> knowledge_base;
  std::vector<const char*> language_model;
};

struct RelationFixture {
  const char* name;  // as the knowledge base reports it
  const char* object;
  double weight;
  KbSource source;
};

const std::map<std::string, ScoreFixture>& scores();
const std::map<std::string, ExpansionFixture>& expansions();
const std::map<std::string, std::vector<RelationFixture>>& relations();

}  // namespace iconix::fixtures
