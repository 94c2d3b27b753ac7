#include <catch2/catch_amalgamated.hpp>
#include <propsize/rational.hpp>

using propsize::Int;
using propsize::Rat;

TEST_CASE("construction canonicalizes", "[rational]") {
  CHECK(Rat(Int(2), Int(4)) == Rat(Int(1), Int(2)));
  CHECK(Rat(Int(3), Int(-6)).den() == 2);
  CHECK(Rat(Int(3), Int(-6)).num() == -1);
  CHECK(Rat(Int(0), Int(7)).to_fraction() == "0/1");
  CHECK_THROWS_AS(Rat(Int(1), Int(0)), std::invalid_argument);
}

TEST_CASE("parse accepts fractions, decimals and integers", "[rational]") {
  CHECK(Rat::parse("7/10") == Rat(Int(7), Int(10)));
  CHECK(Rat::parse("1/1") == Rat(1));
  CHECK(Rat::parse("4/8") == Rat(Int(1), Int(2)));
  CHECK(Rat::parse("0.05") == Rat(Int(1), Int(20)));
  CHECK(Rat::parse("2.50") == Rat(Int(5), Int(2)));
  CHECK(Rat::parse("12") == Rat(12));
  CHECK(Rat::parse("-3/4") == Rat(Int(-3), Int(4)));
  CHECK(Rat::parse("-0.25") == Rat(Int(-1), Int(4)));
}

TEST_CASE("parse rejects malformed input", "[rational]") {
  for (const char* bad : {"", "1/0", "1.2.3", "1e5", " 1/2", "1/2 ", "one",
                          "1//2", "/2", "1/", ".", "3.", ".5-", "--1"}) {
    CHECK_THROWS_AS(Rat::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("fraction serialization round-trips", "[rational]") {
  for (const char* s : {"0/1", "1/1", "22/7", "-5/3", "1000000/999999"}) {
    Rat r = Rat::parse(s);
    CHECK(r.to_fraction() == s);
    CHECK(Rat::parse(r.to_fraction()) == r);
  }
}

TEST_CASE("arithmetic is exact", "[rational]") {
  CHECK(Rat(Int(1), Int(3)) + Rat(Int(1), Int(6)) == Rat(Int(1), Int(2)));
  CHECK(Rat(Int(1), Int(3)) - Rat(Int(1), Int(2)) == Rat(Int(-1), Int(6)));
  CHECK(Rat(Int(2), Int(3)) * Rat(Int(9), Int(4)) == Rat(Int(3), Int(2)));
  CHECK(Rat(Int(2), Int(3)) / Rat(Int(4), Int(3)) == Rat(Int(1), Int(2)));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::invalid_argument);
  CHECK(Rat(Int(1), Int(3)) < Rat(Int(1), Int(2)));
  CHECK(Rat(Int(-1), Int(2)) < Rat(Int(-1), Int(3)));
  CHECK(propsize::abs(Rat(Int(-7), Int(2))) == Rat(Int(7), Int(2)));
}

TEST_CASE("floor and ceil", "[rational]") {
  CHECK(Rat(Int(7), Int(2)).floor() == 3);
  CHECK(Rat(Int(7), Int(2)).ceil() == 4);
  CHECK(Rat(Int(-7), Int(2)).floor() == -4);
  CHECK(Rat(Int(-7), Int(2)).ceil() == -3);
  CHECK(Rat(6).floor() == 6);
  CHECK(Rat(6).ceil() == 6);
}

TEST_CASE("decimal rendering", "[rational]") {
  CHECK(Rat(Int(1), Int(20)).to_decimal() == "0.05");
  CHECK(Rat(Int(2), Int(3)).to_decimal() == "0.666666666667");
  CHECK(Rat(0).to_decimal() == "0");
  CHECK(Rat(Int(1), Int(3)).to_decimal(4) == "0.3333");
}
