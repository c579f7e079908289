#include "kary/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/execution.hpp"
#include "kary/hash.hpp"
#include "kary/io.hpp"
#include "kary/ledger.hpp"
#include "kary/orchestrator.hpp"
#include "kary/workspace.hpp"

namespace kary::cli {
namespace fs = std::filesystem;
namespace {

/// Carries an exit code out of a command body.
struct CommandFailure {
  int code;
  std::string message;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string indices_text(const std::vector<std::uint8_t>& indices) {
  std::string out;
  for (auto i : indices) out += (out.empty() ? "" : ",") + std::to_string(i);
  return out;
}

struct LoadedFragments {
  std::vector<Fragment> fragments;
  std::vector<fs::path> paths;
  std::vector<std::pair<fs::path, std::string>> unparsed;
};

std::vector<fs::path> default_fragment_paths(const WorkspaceConfig& ws) {
  std::vector<fs::path> paths;
  if (!fs::is_directory(ws.fragment_dir)) return paths;
  for (const auto& entry : fs::directory_iterator(ws.fragment_dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("frag_") && entry.path().extension() == ".kary") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

LoadedFragments load_fragments(const std::vector<fs::path>& paths) {
  LoadedFragments out;
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw IoError("missing fragment file " + p.string());
    Bytes data = read_file(p);
    try {
      out.fragments.push_back(parse_fragment(data));
      out.paths.push_back(p);
    } catch (const FragmentParseError& e) {
      out.unparsed.emplace_back(p, e.what());
    }
  }
  return out;
}

PayloadManifest load_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("missing manifest " + path.string());
  try {
    return PayloadManifest::from_json(read_text_file(path));
  } catch (const FormatError& e) {
    throw CommandFailure{kExitFailure, "manifest rejected: " + std::string(e.what())};
  }
}

/// Read-only view of the ledger: a missing file is an empty (genesis-only)
/// chain that is never written back.
Ledger load_ledger_readonly(const WorkspaceConfig& ws) {
  LedgerOptions opts{ws.difficulty, false};
  if (!fs::exists(ws.ledger_file)) return Ledger(opts, 0);
  try {
    return Ledger::from_text(read_text_file(ws.ledger_file), opts);
  } catch (const LedgerError& e) {
    throw CommandFailure{kExitFailure, "ledger rejected: " + std::string(e.what())};
  }
}

ReceiptStore load_receipts(const WorkspaceConfig& ws, const std::vector<Fragment>& fragments) {
  std::vector<Digest> digests;
  for (const auto& f : fragments) digests.push_back(sha256(serialize_fragment(f)));
  return ReceiptStore::load(ws.receipt_dir, digests);
}

ReconstructionMethod parse_method(const std::string& m) {
  return upper(m) == "LAGRANGE" ? ReconstructionMethod::kLagrange : ReconstructionMethod::kNeville;
}

std::unique_ptr<RandomSource> make_rng(const WorkspaceConfig& ws) {
  if (ws.seed) return std::make_unique<SeededRandom>(*ws.seed);
  return std::make_unique<SystemRandom>();
}

void print_status_table(std::ostream& out, const std::vector<FragmentStatus>& statuses,
                        const std::vector<fs::path>& paths) {
  out << std::left << std::setw(6) << "index" << std::setw(28) << "receipt" << std::setw(10) << "slice"
      << std::setw(10) << "header" << std::setw(14) << "dependencies" << "file\n";
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    const auto& s = statuses[i];
    std::string receipt(to_string(s.receipt));
    if (s.receipt == ReceiptStatus::kInvalid) receipt += ":" + std::string(to_string(s.receipt_failure));
    out << std::setw(6) << static_cast<int>(s.index) << std::setw(28) << receipt << std::setw(10)
        << (s.slice_matches ? "valid" : "mismatch") << std::setw(10) << (s.header_matches ? "valid" : "mismatch")
        << std::setw(14) << to_string(s.dependencies) << paths[i].string() << (s.duplicate ? " (duplicate)" : "")
        << "\n";
  }
}

// --- commands --------------------------------------------------------------

struct SplitArgs {
  fs::path payload;
  unsigned k = 4;
  unsigned t = 0;
  std::string class_code = "I_B";
  std::string scheme = "shamir";
  std::string strategy = "contiguous";
};

int cmd_split(const WorkspaceConfig& ws, const SplitArgs& a, std::ostream& out) {
  if (!fs::exists(a.payload)) throw IoError("cannot read payload " + a.payload.string());
  Bytes payload = read_file(a.payload);

  ProduceParams params;
  params.k = a.k;
  params.threshold = a.t;
  try {
    params.class_code = class_code_from_string(upper(a.class_code));
    params.key_scheme = key_scheme_from_string(upper(a.scheme) == "XOR" ? "XOR_SPLIT" : upper(a.scheme));
    params.strategy = partition_strategy_from_string(upper(a.strategy));
  } catch (const InvalidArgument& e) {
    throw CommandFailure{kExitUsage, e.what()};
  }

  auto rng = make_rng(ws);
  Production prod;
  try {
    prod = produce(payload, params, *rng);
  } catch (const InvalidArgument& e) {
    throw CommandFailure{kExitUsage, e.what()};
  }

  fs::create_directories(ws.fragment_dir);
  for (std::size_t i = 0; i < prod.fragments.size(); ++i) {
    auto path = ws.fragment_dir / ("frag_" + std::to_string(i + 1) + ".kary");
    write_file(path, prod.fragments[i]);
    out << "wrote " << path.string() << "\n";
  }
  auto manifest_path = ws.root / (a.payload.stem().string() + std::string(kManifestExtension));
  write_text_file(manifest_path, prod.manifest.to_json() + "\n");
  out << "wrote " << manifest_path.string() << "\n";
  return kExitOk;
}

int cmd_anchor(const WorkspaceConfig& ws, const std::vector<fs::path>& paths, std::ostream& out) {
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw IoError("missing file " + p.string());
  }
  Ledger ledger = Ledger::open(ws.ledger_file, {ws.difficulty, false}, current_timestamp());
  auto pending = ledger.pending();
  std::set<Digest> seen(pending.begin(), pending.end());
  std::vector<Digest> digests;
  for (const auto& p : paths) {
    Digest d = sha256(read_file(p));
    if (!seen.insert(d).second) {
      throw CommandFailure{kExitDuplicatePending, "digest of " + p.string() + " is already pending"};
    }
    digests.push_back(d);
  }
  for (std::size_t i = 0; i < digests.size(); ++i) {
    ledger.submit_anchor(digests[i]);
    out << "pending " << to_hex(digests[i]) << "  " << paths[i].string() << "\n";
  }
  return kExitOk;
}

int cmd_mine(const WorkspaceConfig& ws, std::ostream& out) {
  const std::uint64_t now = current_timestamp();
  Ledger ledger = Ledger::open(ws.ledger_file, {ws.difficulty, false}, now);
  MineResult mined;
  try {
    mined = ledger.mine_block(now);
  } catch (const LedgerError& e) {
    if (e.kind() == LedgerErrorKind::kEmptyBlock) throw CommandFailure{kExitEmptyPool, e.what()};
    throw;
  }
  auto written = ReceiptStore::save(ws.receipt_dir, mined.receipts);
  out << "mined block " << mined.block.height << " hash " << to_hex(block_hash(mined.block)) << " nonce "
      << mined.block.nonce << " (" << mined.receipts.size() << " receipts)\n";
  for (const auto& p : written) out << "wrote " << p.string() << "\n";
  return kExitOk;
}

struct GateArgs {
  fs::path manifest;
  std::vector<fs::path> fragments;
  std::string method = "neville";
  fs::path output;
  fs::path report;
};

std::vector<fs::path> fragment_paths(const WorkspaceConfig& ws, const GateArgs& a) {
  return a.fragments.empty() ? default_fragment_paths(ws) : a.fragments;
}

int cmd_verify(const WorkspaceConfig& ws, const GateArgs& a, std::ostream& out) {
  PayloadManifest manifest = load_manifest(a.manifest);
  LoadedFragments loaded = load_fragments(fragment_paths(ws, a));
  Ledger ledger = load_ledger_readonly(ws);
  ReceiptStore receipts = load_receipts(ws, loaded.fragments);

  auto statuses = verify_fragments(loaded.fragments, manifest, receipts, ledger);
  const bool chain_valid = ledger.validate_chain();
  print_status_table(out, statuses, loaded.paths);

  bool ok = chain_valid && loaded.unparsed.empty();
  json frags = json::array();
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    const auto& s = statuses[i];
    ok = ok && s.valid();
    std::string receipt(to_string(s.receipt));
    if (s.receipt == ReceiptStatus::kInvalid) receipt += ":" + std::string(to_string(s.receipt_failure));
    frags.push_back({{"index", s.index},
                     {"path", loaded.paths[i].string()},
                     {"receipt", receipt},
                     {"slice", s.slice_matches ? "valid" : "mismatch"},
                     {"header", s.header_matches ? "valid" : "mismatch"},
                     {"dependencies", to_string(s.dependencies)},
                     {"duplicate", s.duplicate},
                     {"valid", s.valid()}});
  }
  json unparsed = json::array();
  for (const auto& [p, why] : loaded.unparsed) {
    unparsed.push_back({{"path", p.string()}, {"error", why}});
    out << "unparseable fragment " << p.string() << ": " << why << "\n";
  }
  json doc = {{"ok", ok}, {"chain_valid", chain_valid}, {"fragments", frags}, {"unparsed", unparsed}};
  fs::path json_path = a.report.empty() ? ws.root / "verify-status.json" : a.report;
  write_text_file(json_path, to_canonical(doc) + "\n");
  if (!chain_valid) out << "ledger failed validation\n";
  out << (ok ? "all fragments verified\n" : "verification FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

struct GateInputs {
  PayloadManifest manifest;
  LoadedFragments loaded;
  Ledger ledger;
  ReceiptStore receipts;
};

GateInputs load_gate_inputs(const WorkspaceConfig& ws, const GateArgs& a) {
  PayloadManifest manifest = load_manifest(a.manifest);
  LoadedFragments loaded = load_fragments(fragment_paths(ws, a));
  if (!loaded.unparsed.empty()) {
    throw CommandFailure{kExitFailure, "verification-failed: unparseable fragment " +
                                           loaded.unparsed.front().first.string()};
  }
  Ledger ledger = load_ledger_readonly(ws);
  ReceiptStore receipts = load_receipts(ws, loaded.fragments);
  return {std::move(manifest), std::move(loaded), std::move(ledger), std::move(receipts)};
}

int cmd_assemble(const WorkspaceConfig& ws, const GateArgs& a, std::ostream& out) {
  GateInputs in = load_gate_inputs(ws, a);
  fs::path report_path = a.report.empty() ? ws.root / "assembly-report.json" : a.report;
  try {
    Assembly result = assemble(in.loaded.fragments, in.manifest, in.receipts, in.ledger, parse_method(a.method));
    fs::path output = a.output.empty() ? ws.root / "recovered.bin" : a.output;
    write_file(output, result.payload);
    write_text_file(report_path, result.report.to_json() + "\n");
    out << "recovered " << result.payload.size() << " bytes to " << output.string() << " (sha256 "
        << to_hex(sha256(result.payload)) << ")\n";
    return kExitOk;
  } catch (const AssemblyError& e) {
    write_text_file(report_path, e.report().to_json() + "\n");
    throw CommandFailure{kExitFailure, std::string(to_string(e.kind())) + ": " + e.what() +
                                           (e.indices().empty() ? "" : " (fragments " + indices_text(e.indices()) + ")")};
  }
}

int cmd_run(const WorkspaceConfig& ws, const GateArgs& a, std::ostream& out) {
  GateInputs in = load_gate_inputs(ws, a);
  fs::path trace_path = a.report.empty() ? ws.root / "trace.json" : a.report;
  auto refuse = [&](const ActivationTrace& trace, const std::string& why) {
    write_text_file(trace_path, trace.to_json() + "\n");
    throw CommandFailure{kExitFailure, why};
  };

  ActivationTrace empty;
  empty.parallel = !is_sequential(in.manifest.class_code);
  if (!is_sequential(in.manifest.class_code)) {
    auto missing = missing_indices(in.loaded.fragments, in.manifest);
    if (!missing.empty()) {
      refuse(empty, std::string(to_string(ExecutionErrorKind::kMissingFragment)) +
                        ": parallel execution needs every fragment (missing " + indices_text(missing) + ")");
    }
  }

  try {
    Assembly result = assemble(in.loaded.fragments, in.manifest, in.receipts, in.ledger, parse_method(a.method));
    ActivationTrace trace = execute(in.loaded.fragments, in.manifest);
    write_text_file(trace_path, trace.to_json() + "\n");
    for (const auto& line : trace.log) out << line << "\n";
    out << "trace written to " << trace_path.string() << "\n";
    return kExitOk;
  } catch (const AssemblyError& e) {
    refuse(empty, std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const ExecutionError& e) {
    refuse(e.partial_trace(), std::string(to_string(e.kind())) + ": " + e.what());
  }
  return kExitFailure;
}

int cmd_ledger_show(const WorkspaceConfig& ws, std::ostream& out) {
  if (!fs::exists(ws.ledger_file)) throw IoError("no ledger at " + ws.ledger_file.string());
  Ledger ledger = load_ledger_readonly(ws);
  for (const auto& b : ledger.blocks()) {
    out << "block " << b.height << "\n"
        << "  hash        " << to_hex(block_hash(b)) << "\n"
        << "  prev_hash   " << to_hex(b.prev_hash) << "\n"
        << "  merkle_root " << to_hex(b.merkle_root) << "\n"
        << "  timestamp   " << b.timestamp << "\n"
        << "  difficulty  " << static_cast<int>(b.difficulty) << "  nonce " << b.nonce << "\n";
    for (const auto& d : b.tx_digests) out << "  tx " << to_hex(d) << "\n";
  }
  return kExitOk;
}

int cmd_ledger_validate(const WorkspaceConfig& ws, std::ostream& out) {
  if (!fs::exists(ws.ledger_file)) throw IoError("no ledger at " + ws.ledger_file.string());
  Ledger ledger = load_ledger_readonly(ws);
  if (!ledger.validate_chain()) throw CommandFailure{kExitFailure, "ledger INVALID"};
  out << "ledger valid (" << ledger.size() << " blocks)\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split a payload into k ledger-anchored fragments and reassemble it after verification", "kary"};
  app.require_subcommand(1);
  app.fallthrough();

  fs::path workspace = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> difficulty;
  app.add_option("--workspace", workspace, "Workspace directory");
  app.add_option("--seed", seed, "Seed for reproducible randomness");
  app.add_option("--difficulty", difficulty, "Proof-of-work leading zero bits (0..32)")
      ->check(CLI::Range(0u, WorkspaceConfig::kMaxDifficulty));

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Encrypt a payload and write k fragment files plus a manifest");
  split_cmd->add_option("payload", split.payload, "Payload file")->required();
  split_cmd->add_option("-k,--fragments", split.k, "Number of fragments")->check(CLI::Range(1u, 255u));
  split_cmd->add_option("-t,--threshold", split.t, "Key shares needed (default k)")->check(CLI::Range(0u, 255u));
  split_cmd->add_option("--class", split.class_code, "I_A | I_B | I_C | II");
  split_cmd->add_option("--scheme", split.scheme, "shamir | xor");
  split_cmd->add_option("--strategy", split.strategy, "contiguous | interleave");

  std::vector<fs::path> anchor_paths;
  auto* anchor_cmd = app.add_subcommand("anchor", "Queue file digests for anchoring");
  anchor_cmd->add_option("files", anchor_paths, "Fragment files")->required();

  auto* mine_cmd = app.add_subcommand("mine", "Mine pending digests into a block and write receipts");

  GateArgs gate;
  auto add_gate = [&](CLI::App* cmd, const char* report_flag, const char* report_help) {
    cmd->add_option("manifest", gate.manifest, "Manifest file")->required();
    cmd->add_option("fragments", gate.fragments, "Fragment files (default: the workspace's fragments)");
    cmd->add_option(report_flag, gate.report, report_help);
  };
  auto* verify_cmd = app.add_subcommand("verify", "Verify fragments against the manifest and ledger");
  add_gate(verify_cmd, "--json", "Where to write the JSON status");
  auto* assemble_cmd = app.add_subcommand("assemble", "Verify, reconstruct the key and decrypt the payload");
  add_gate(assemble_cmd, "--report", "Where to write the assembly report");
  assemble_cmd->add_option("-o,--output", gate.output, "Recovered payload path");
  auto* run_cmd = app.add_subcommand("run", "Assemble, then run the benign per-fragment actions");
  add_gate(run_cmd, "--trace", "Where to write the activation trace");
  for (auto* cmd : {assemble_cmd, run_cmd}) {
    cmd->add_option("--method", gate.method, "neville | lagrange")
        ->check(CLI::IsMember({"neville", "lagrange"}, CLI::ignore_case));
  }

  auto* ledger_cmd = app.add_subcommand("ledger", "Inspect the ledger");
  ledger_cmd->require_subcommand(1);
  auto* show_cmd = ledger_cmd->add_subcommand("show", "Print every block");
  auto* validate_cmd = ledger_cmd->add_subcommand("validate", "Audit the whole chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    WorkspaceConfig ws = resolve_workspace(workspace, {difficulty, seed});
    if (*split_cmd) return cmd_split(ws, split, out);
    if (*anchor_cmd) return cmd_anchor(ws, anchor_paths, out);
    if (*mine_cmd) return cmd_mine(ws, out);
    if (*verify_cmd) return cmd_verify(ws, gate, out);
    if (*assemble_cmd) return cmd_assemble(ws, gate, out);
    if (*run_cmd) return cmd_run(ws, gate, out);
    if (*show_cmd) return cmd_ledger_show(ws, out);
    if (*validate_cmd) return cmd_ledger_validate(ws, out);
  } catch (const CommandFailure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const LedgerError& e) {
    err << "ledger error: " << e.what() << "\n";
    return e.kind() == LedgerErrorKind::kDuplicatePending ? kExitDuplicatePending : kExitFailure;
  }
  return kExitUsage;
}

}  // namespace kary::cli
