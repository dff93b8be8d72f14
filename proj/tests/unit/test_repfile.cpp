#include <gtest/gtest.h>

#include "confsym/errors.hpp"
#include "confsym/repfile.hpp"

using namespace confsym;

TEST(RepFile, RoundTripIsBitExact) {
  const Registry& reg = Registry::instance();
  std::vector<std::string> ids;
  for (const auto& a : reg.algebras()) ids.push_back(a.id);
  for (const auto& c : reg.cases()) ids.push_back(c.id);
  for (const auto& id : ids) {
    RepFile rep = repfile_for(id);
    std::string text = serialize_repfile(rep);
    RepFile back = parse_repfile(text);
    EXPECT_EQ(serialize_repfile(back), text) << id;
    ASSERT_EQ(back.generators.size(), rep.generators.size()) << id;
    for (std::size_t i = 0; i < rep.generators.size(); ++i)
      EXPECT_TRUE(back.generators[i] == rep.generators[i]) << id << " " << rep.generators[i].name();
  }
}

TEST(RepFile, LoadedFileVerifiesLikeTheRegistry) {
  RepFile rep = parse_repfile(serialize_repfile(repfile_for("sch1-mass")));
  auto report = verify_structure(rep.generators, rep.spec);
  EXPECT_TRUE(report.ok());
}

TEST(RepFile, HandWritten) {
  const std::string text =
      "name: toy\n"
      "# time translation and dilatation\n"
      "coordinates: t r\n"
      "params: x\n"
      "generator P:\n"
      "  t: -1\n"
      "generator D:\n"
      "  t: -t\n"
      "  r: -1/2*r\n"
      "  multiplier: -1/2*x\n"
      "bracket [P, D]:\n"
      "  P: -1\n";
  RepFile rep = parse_repfile(text);
  ASSERT_EQ(rep.generators.size(), 2u);
  EXPECT_TRUE(verify_structure(rep.generators, rep.spec).ok());
  rep.spec.set("P", "D", {{"P", Expr(1)}});
  EXPECT_FALSE(verify_structure(rep.generators, rep.spec).ok());
}

TEST(RepFile, ErrorsCarryLineNumbers) {
  try {
    parse_repfile("name: bad\ncoordinates: t\ngenerator A:\n  q: 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_repfile("name: bad\nbogus: 1\n"), ParseError);
  EXPECT_THROW(parse_repfile("coordinates: t\nbracket [A, B]:\n  A: 1\n"), ParseError);
}
