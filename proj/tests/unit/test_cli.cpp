#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "demo_instance.hpp"
#include "kary/canonical_json.hpp"
#include "kary/cli.hpp"
#include "kary/io.hpp"

namespace fs = std::filesystem;
using namespace kary;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Workspace {
 public:
  explicit Workspace(const std::string& name) : root_(fs::temp_directory_path() / ("kary_cli_" + name)) {
    fs::remove_all(root_);
    fs::create_directories(root_);
    ::setenv("KARY_TIMESTAMP", "1700000000", 1);
  }
  ~Workspace() { fs::remove_all(root_); }

  Result run(std::initializer_list<std::string> args) const { return run_vec(args); }

  fs::path path(const std::string& rel) const { return root_ / rel; }
  std::string str(const std::string& rel) const { return path(rel).string(); }

  void write_payload(std::size_t n, std::uint64_t seed) const {
    write_file(path("payload.bin"), kary::testing::random_bytes(n, seed));
  }

  /// split, anchor every fragment, mine.
  void prepare(std::initializer_list<std::string> split_args, unsigned k) const {
    write_payload(2048, 42);
    std::vector<std::string> split{"--seed", "7", "split", str("payload.bin")};
    split.insert(split.end(), split_args.begin(), split_args.end());
    REQUIRE(run_vec(split).code == 0);
    std::vector<std::string> anchor{"anchor"};
    for (unsigned i = 1; i <= k; ++i) anchor.push_back(frag(i));
    REQUIRE(run_vec(anchor).code == 0);
    REQUIRE(run({"mine"}).code == 0);
  }

  Result run_vec(const std::vector<std::string>& args) const {
    std::vector<std::string> storage{"kary", "--workspace", root_.string(), "--difficulty", "4"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::string frag(unsigned i) const { return str("fragments/frag_" + std::to_string(i) + ".kary"); }
  std::string manifest() const { return str("payload.kmanifest.json"); }

 private:
  fs::path root_;
};

}  // namespace

TEST_CASE("cli: full round trip") {
  Workspace ws("roundtrip");
  ws.prepare({"-k", "4"}, 4);
  CHECK(fs::exists(ws.path("ledger.jsonl")));
  CHECK(ws.run({"verify", ws.manifest()}).code == 0);
  auto status = json::parse(read_text_file(ws.path("verify-status.json")));
  CHECK(status["ok"] == true);
  CHECK(status["fragments"].size() == 4);
  Result r = ws.run({"assemble", ws.manifest()});
  CHECK(r.code == 0);
  CHECK(read_file(ws.path("recovered.bin")) == read_file(ws.path("payload.bin")));
  CHECK(ws.run({"ledger", "validate"}).code == 0);
  Result show = ws.run({"ledger", "show"});
  CHECK(show.code == 0);
  CHECK(show.out.find("block 1") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  Workspace ws("usage");
  ws.write_payload(100, 1);
  CHECK(ws.run({}).code == 2);
  CHECK(ws.run({"frobnicate"}).code == 2);
  CHECK(ws.run({"split", ws.str("payload.bin"), "-k", "0"}).code == 2);
  CHECK(ws.run({"split", ws.str("payload.bin"), "-k", "4", "-t", "5"}).code == 2);
  CHECK(ws.run({"split", ws.str("payload.bin"), "--class", "III"}).code == 2);
  CHECK(ws.run({"split", ws.str("payload.bin"), "--scheme", "xor", "-t", "2"}).code == 2);
  CHECK(ws.run({"--difficulty", "33", "mine"}).code == 2);
}

TEST_CASE("cli: I/O errors exit 3") {
  Workspace ws("io");
  CHECK(ws.run({"split", ws.str("nope.bin")}).code == 3);
  CHECK(ws.run({"anchor", ws.str("nope.bin")}).code == 3);
  CHECK(ws.run({"verify", ws.str("nope.kmanifest.json")}).code == 3);
  CHECK(ws.run({"ledger", "show"}).code == 3);
}

TEST_CASE("cli: duplicate pending anchor exits 4, empty pool exits 5") {
  Workspace ws("pool");
  ws.write_payload(500, 3);
  REQUIRE(ws.run({"--seed", "1", "split", ws.str("payload.bin"), "-k", "2"}).code == 0);
  CHECK(ws.run({"mine"}).code == 5);
  CHECK(ws.run({"anchor", ws.frag(1)}).code == 0);
  CHECK(ws.run({"anchor", ws.frag(1)}).code == 4);
  CHECK(ws.run({"anchor", ws.frag(2), ws.frag(2)}).code == 4);
  CHECK(ws.run({"anchor", ws.frag(2)}).code == 0);
  CHECK(ws.run({"mine"}).code == 0);
  CHECK(ws.run({"mine"}).code == 5);
}

TEST_CASE("cli: a tampered fragment is named and refused") {
  Workspace ws("tamper");
  ws.prepare({"-k", "4"}, 4);
  Bytes f3 = read_file(ws.frag(3));
  f3[f3.size() - 10] ^= 0x01;  // inside the slice; the last byte is dep_count
  write_file(ws.frag(3), f3);

  CHECK(ws.run({"verify", ws.manifest()}).code == 1);
  auto status = json::parse(read_text_file(ws.path("verify-status.json")));
  CHECK(status["ok"] == false);
  for (const auto& f : status["fragments"]) {
    bool victim = f["index"] == 3;
    CHECK(f["valid"] == !victim);
    if (victim) CHECK(f["receipt"] == "unanchored");
  }
  fs::remove(ws.path("recovered.bin"));
  Result r = ws.run({"assemble", ws.manifest()});
  CHECK(r.code == 1);
  CHECK(r.err.find("verification-failed") != std::string::npos);
  CHECK_FALSE(fs::exists(ws.path("recovered.bin")));
  auto report = json::parse(read_text_file(ws.path("assembly-report.json")));
  CHECK(report["decryption"] == "not-attempted");
  CHECK(report["fragments"][2]["valid"] == false);
}

TEST_CASE("cli: unanchored fragment and deleted receipt") {
  Workspace ws("unanchored");
  ws.write_payload(900, 5);
  REQUIRE(ws.run({"--seed", "3", "split", ws.str("payload.bin"), "-k", "3"}).code == 0);
  REQUIRE(ws.run({"anchor", ws.frag(1), ws.frag(2)}).code == 0);
  REQUIRE(ws.run({"mine"}).code == 0);
  CHECK(ws.run({"verify", ws.manifest()}).code == 1);
  auto status = json::parse(read_text_file(ws.path("verify-status.json")));
  CHECK(status["fragments"][2]["receipt"] == "unanchored");
  CHECK(status["fragments"][0]["valid"] == true);
}

TEST_CASE("cli: Class II run with a deleted fragment refuses and activates nothing") {
  Workspace ws("class2");
  ws.prepare({"-k", "4", "--class", "II"}, 4);
  REQUIRE(ws.run({"run", ws.manifest()}).code == 0);
  auto trace = json::parse(read_text_file(ws.path("trace.json")));
  CHECK(trace["mode"] == "parallel");
  CHECK(trace["events"].size() == 4);

  fs::remove(ws.frag(2));
  Result r = ws.run({"run", ws.manifest()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing-fragment") != std::string::npos);
  trace = json::parse(read_text_file(ws.path("trace.json")));
  CHECK(trace["events"].empty());
  CHECK(trace["log"].empty());
}

TEST_CASE("cli: Class I run writes a sequential trace") {
  Workspace ws("class1");
  ws.prepare({"-k", "3", "--class", "I_C", "--strategy", "interleave"}, 3);
  Result r = ws.run({"run", ws.manifest()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("fragment 3 activated") != std::string::npos);
  auto trace = json::parse(read_text_file(ws.path("trace.json")));
  CHECK(trace["mode"] == "sequential");
}

TEST_CASE("cli: the reconstruction methods give identical results") {
  Workspace ws("methods");
  ws.prepare({"-k", "5", "-t", "3"}, 5);
  REQUIRE(ws.run({"assemble", ws.manifest(), "--method", "neville", "-o", ws.str("n.bin")}).code == 0);
  REQUIRE(ws.run({"assemble", ws.manifest(), "--method", "lagrange", "-o", ws.str("l.bin")}).code == 0);
  CHECK(read_file(ws.path("n.bin")) == read_file(ws.path("l.bin")));
  CHECK(ws.run({"assemble", ws.manifest(), "--method", "cramer"}).code == 2);
}

TEST_CASE("cli: threshold below k still needs every slice") {
  Workspace ws("threshold");
  ws.prepare({"-k", "4", "-t", "2"}, 4);
  Result r = ws.run({"assemble", ws.manifest(), ws.frag(1), ws.frag(2), ws.frag(4)});
  CHECK(r.code == 1);
  CHECK(r.err.find("insufficient-slices") != std::string::npos);
  auto report = json::parse(read_text_file(ws.path("assembly-report.json")));
  CHECK(report["key_reconstructed"] == true);
}

TEST_CASE("cli: seeded runs are byte-for-byte reproducible") {
  std::vector<std::string> snapshots;
  for (int run = 0; run < 2; ++run) {
    Workspace ws("determinism" + std::to_string(run));
    ws.prepare({"-k", "3"}, 3);
    std::string snap = read_text_file(ws.path("ledger.jsonl")) + read_text_file(ws.manifest());
    for (unsigned i = 1; i <= 3; ++i) snap += to_hex(read_file(ws.frag(i)));
    snapshots.push_back(snap);
  }
  CHECK(snapshots[0] == snapshots[1]);
}

TEST_CASE("cli: a corrupted ledger file is refused") {
  Workspace ws("ledger");
  ws.prepare({"-k", "2"}, 2);
  std::string text = read_text_file(ws.path("ledger.jsonl"));
  auto pos = text.find("\"nonce\":");
  REQUIRE(pos != std::string::npos);
  text[pos + 8] = text[pos + 8] == '9' ? '8' : '9';
  write_text_file(ws.path("ledger.jsonl"), text);
  CHECK(ws.run({"ledger", "validate"}).code == 1);
  CHECK(ws.run({"assemble", ws.manifest()}).code == 1);
}
