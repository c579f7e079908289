#include <doctest.h>

#include "demo_instance.hpp"
#include "kary/error.hpp"
#include "kary/manifest.hpp"

using namespace kary;

namespace {

PayloadManifest sample() {
  PayloadManifest m;
  m.k = 3;
  m.threshold = 2;
  m.class_code = ClassCode::kIC;
  m.key_scheme = KeyScheme::kShamir;
  m.partition_strategy = PartitionStrategy::kInterleave;
  for (unsigned i = 0; i < 3; ++i) {
    Digest d{};
    d.fill(static_cast<std::uint8_t>(0xa0 + i));
    m.slice_digests.push_back(d);
  }
  m.nonce.fill(0x0c);
  m.ciphertext_digest.fill(0x11);
  m.plaintext_digest.fill(0x22);
  return m;
}

}  // namespace

TEST_CASE("manifest JSON is canonical and round-trips") {
  PayloadManifest m = sample();
  std::string text = m.to_json();
  CHECK(text.find(' ') == std::string::npos);
  CHECK(text.rfind(R"({"ciphertext_digest":")", 0) == 0);
  CHECK(text.find(R"("class_code":"I_C")") != std::string::npos);
  CHECK(text.find(R"("nonce":"0c0c0c0c0c0c0c0c0c0c0c0c")") != std::string::npos);
  CHECK(PayloadManifest::from_json(text) == m);
}

TEST_CASE("manifest invariants") {
  PayloadManifest m = sample();
  CHECK_NOTHROW(m.validate());

  auto broken = [&](auto mutate) {
    PayloadManifest copy = m;
    mutate(copy);
    return copy;
  };
  CHECK_THROWS_AS(broken([](auto& x) { x.threshold = 0; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.threshold = 4; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.key_scheme = KeyScheme::kXorSplit; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.slice_digests.pop_back(); }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.k = 0; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.version = 2; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](auto& x) { x.partition_seed = 1; }).validate(), InvalidArgument);
}

TEST_CASE("manifest parsing is strict") {
  std::string text = sample().to_json();
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string copy = text;
    copy.replace(copy.find(from), from.size(), to);
    return copy;
  };
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("\"k\":3", "\"k\": 3")), FormatError);
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("a0a0", "A0a0")), FormatError);
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("\"I_C\"", "\"I_D\"")), FormatError);
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("\"threshold\":2", "\"threshold\":9")), FormatError);
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("\"version\":1", "\"version\":1,\"zzz\":0")), FormatError);
  CHECK_THROWS_AS(PayloadManifest::from_json(replace("0c0c0c0c0c0c0c0c0c0c0c0c", "0c0c")), FormatError);
}

TEST_CASE("a single bit flip anywhere in a manifest never yields a different valid manifest") {
  PayloadManifest m = sample();
  std::string text = m.to_json();
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (int bit = 0; bit < 8; ++bit) {
      std::string copy = text;
      copy[i] = static_cast<char>(copy[i] ^ (1 << bit));
      try {
        PayloadManifest parsed = PayloadManifest::from_json(copy);
        // Only semantic changes may survive parsing.
        CHECK(parsed != m);
      } catch (const FormatError&) {
      }
    }
  }
}
