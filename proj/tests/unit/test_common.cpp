#include <doctest.h>

#include "kary/bytes.hpp"
#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/hash.hpp"
#include "kary/random.hpp"

using namespace kary;

TEST_CASE("sha256 known vectors") {
  CHECK(to_hex(sha256(to_bytes("abc"))) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(to_hex(sha256(to_bytes("a"))) == "ca978112ca1bbdcafac231b39a23dc4da786eff8147c4e72b9807785afee48bb");
}

TEST_CASE("hex decoding is strict") {
  CHECK(from_hex("00ff10") == Bytes{0x00, 0xff, 0x10});
  CHECK_THROWS_AS(from_hex("0"), FormatError);
  CHECK_THROWS_AS(from_hex("FF"), FormatError);
  CHECK_THROWS_AS(from_hex("zz"), FormatError);
  CHECK_THROWS_AS(digest_from_hex("00"), FormatError);
}

TEST_CASE("canonical JSON") {
  json doc = {{"b", 1}, {"a", "x"}};
  CHECK(to_canonical(doc) == R"({"a":"x","b":1})");
  CHECK(parse_canonical(R"({"a":"x","b":1})") == doc);
  CHECK(parse_canonical("{\"a\":\"x\",\"b\":1}\n") == doc);
  CHECK_THROWS_AS(parse_canonical(R"({"b":1,"a":"x"})"), FormatError);
  CHECK_THROWS_AS(parse_canonical(R"({"a": "x","b":1})"), FormatError);
  CHECK_THROWS_AS(parse_canonical(R"({"a":"\u0078","b":1})"), FormatError);
  CHECK_THROWS_AS(parse_canonical("{"), FormatError);
}

TEST_CASE("seeded random replays") {
  SeededRandom a(42), b(42), c(43);
  Bytes x(100), y(100), z(100);
  a.fill(x);
  b.fill(y);
  c.fill(z);
  CHECK(x == y);
  CHECK(x != z);
}
