#include "kary/execution.hpp"

#include <barrier>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "kary/canonical_json.hpp"
#include "kary/hash.hpp"

namespace kary {
namespace {

std::map<std::uint8_t, const Fragment*> by_index(std::span<const Fragment> fragments) {
  std::map<std::uint8_t, const Fragment*> out;
  for (const auto& f : fragments) out.try_emplace(f.index, &f);
  return out;
}

const Action& action_for(const ActionTable& actions, std::uint8_t index, const Action& fallback) {
  auto it = actions.find(index);
  return it == actions.end() ? fallback : it->second;
}

bool dependencies_hold(const Fragment& f, const PayloadManifest& manifest,
                       const std::map<std::uint8_t, const Fragment*>& present) {
  auto deps = dependency_indices(manifest.class_code, f.index, manifest.k);
  if (deps.size() != f.dep_digests.size()) return false;
  for (std::size_t n = 0; n < deps.size(); ++n) {
    auto it = present.find(deps[n]);
    if (it == present.end() || sha256(it->second->slice) != f.dep_digests[n]) return false;
  }
  return true;
}

ActivationTrace run_sequential(const PayloadManifest& manifest, const ActionTable& actions,
                               const std::map<std::uint8_t, const Fragment*>& present) {
  const Action fallback = default_action();
  const bool recheck = manifest.class_code == ClassCode::kIA || manifest.class_code == ClassCode::kIC;
  ActivationTrace trace;
  std::uint64_t clock = 0;
  for (unsigned i = 1; i <= manifest.k; ++i) {
    const auto index = static_cast<std::uint8_t>(i);
    auto it = present.find(index);
    if (it == present.end()) {
      throw ExecutionError(ExecutionErrorKind::kMissingFragment, index, trace,
                           "fragment " + std::to_string(i) + " is not available");
    }
    if (recheck && !dependencies_hold(*it->second, manifest, present)) {
      throw ExecutionError(ExecutionErrorKind::kDependencyCheck, index, trace,
                           "dependency check failed before activating fragment " + std::to_string(i));
    }
    ActivationEvent ev{index, ++clock, 0};
    std::string line;
    try {
      line = action_for(actions, index, fallback)(index);
    } catch (const std::exception& e) {
      throw ExecutionError(ExecutionErrorKind::kActionFailed, index, trace,
                           "action for fragment " + std::to_string(i) + " failed: " + e.what());
    }
    ev.end = ++clock;
    trace.events.push_back(ev);
    trace.log.push_back(std::move(line));
  }
  return trace;
}

ActivationTrace run_parallel(const PayloadManifest& manifest, const ActionTable& actions) {
  const Action fallback = default_action();
  const std::size_t k = manifest.k;
  ActivationTrace trace;
  trace.parallel = true;
  trace.events.resize(k);
  trace.log.resize(k);
  std::vector<std::optional<std::string>> errors(k);

  std::uint64_t clock = 0;
  // Completion steps run once, on one thread, while every participant waits.
  auto stamp_starts = [&]() noexcept {
    for (std::size_t i = 0; i < k; ++i) trace.events[i] = {static_cast<std::uint8_t>(i + 1), ++clock, 0};
  };
  auto stamp_ends = [&]() noexcept {
    for (std::size_t i = 0; i < k; ++i) trace.events[i].end = ++clock;
  };
  std::barrier start_line(static_cast<std::ptrdiff_t>(k), stamp_starts);
  std::barrier finish_line(static_cast<std::ptrdiff_t>(k), stamp_ends);

  {
    std::vector<std::jthread> workers;
    workers.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      workers.emplace_back([&, i] {
        const auto index = static_cast<std::uint8_t>(i + 1);
        start_line.arrive_and_wait();
        try {
          trace.log[i] = action_for(actions, index, fallback)(index);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
        finish_line.arrive_and_wait();
      });
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    if (errors[i]) {
      throw ExecutionError(ExecutionErrorKind::kActionFailed, static_cast<std::uint8_t>(i + 1), {},
                           "action for fragment " + std::to_string(i + 1) + " failed: " + *errors[i]);
    }
  }
  return trace;
}

}  // namespace

Action default_action() {
  return [](std::uint8_t index) { return "fragment " + std::to_string(index) + " activated"; };
}

std::string_view to_string(ExecutionErrorKind k) {
  switch (k) {
    case ExecutionErrorKind::kMissingFragment: return "missing-fragment";
    case ExecutionErrorKind::kDependencyCheck: return "dependency-check-failed";
    case ExecutionErrorKind::kActionFailed: return "action-failed";
  }
  return "unknown";
}

std::string ActivationTrace::to_json() const {
  json events_doc = json::array();
  for (const auto& e : events) events_doc.push_back({{"index", e.index}, {"start", e.start}, {"end", e.end}});
  json doc = {
      {"mode", parallel ? "parallel" : "sequential"},
      {"events", std::move(events_doc)},
      {"log", log},
  };
  return to_canonical(doc);
}

ActivationTrace execute(std::span<const Fragment> fragments, const PayloadManifest& manifest,
                        const ActionTable& actions) {
  manifest.validate();
  auto present = by_index(fragments);
  if (is_sequential(manifest.class_code)) return run_sequential(manifest, actions, present);

  auto missing = missing_indices(fragments, manifest);
  if (!missing.empty()) {
    throw ExecutionError(ExecutionErrorKind::kMissingFragment, missing.front(), {},
                         "parallel execution needs all " + std::to_string(manifest.k) + " fragments");
  }
  return run_parallel(manifest, actions);
}

bool is_sequential_trace(const ActivationTrace& trace) {
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    if (e.index != i + 1 || e.start >= e.end) return false;
    if (i > 0 && trace.events[i - 1].end >= e.start) return false;
  }
  return true;
}

bool is_pairwise_overlapping(const ActivationTrace& trace) {
  for (const auto& a : trace.events) {
    if (a.start >= a.end) return false;
    for (const auto& b : trace.events) {
      if (a.start >= b.end || b.start >= a.end) return false;
    }
  }
  return true;
}

}  // namespace kary
