#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kary/fragment.hpp"
#include "kary/manifest.hpp"
#include "kary/orchestrator.hpp"

namespace kary {

/// A benign activation. Receives the fragment index and returns one line for
/// the activation log.
using Action = std::function<std::string(std::uint8_t index)>;

/// Per-index actions; indices without an entry get default_action().
using ActionTable = std::map<std::uint8_t, Action>;

Action default_action();

struct ActivationTrace {
  bool parallel = false;
  std::vector<ActivationEvent> events;  // ordered by index
  std::vector<std::string> log;         // ordered by index

  std::string to_json() const;
};

enum class ExecutionErrorKind { kMissingFragment, kDependencyCheck, kActionFailed };

std::string_view to_string(ExecutionErrorKind k);

class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(ExecutionErrorKind kind, std::uint8_t index, ActivationTrace partial, const std::string& what)
      : std::runtime_error(what), kind_(kind), index_(index), partial_(std::move(partial)) {}

  ExecutionErrorKind kind() const noexcept { return kind_; }
  std::uint8_t index() const noexcept { return index_; }
  /// Activations completed before the failure (always empty for Class II).
  const ActivationTrace& partial_trace() const noexcept { return partial_; }

 private:
  ExecutionErrorKind kind_;
  std::uint8_t index_;
  ActivationTrace partial_;
};

/// Runs the actions with the semantics of the manifest's class.
///
/// Class I runs index 1..k in order; I_A and I_C re-check their dependency
/// digests right before each activation. Class II refuses unless all k
/// fragments are present, then starts all k activations on separate threads
/// that meet at a rendezvous before any of them runs and again before any is
/// considered finished, so every activation interval overlaps every other.
///
/// Ticks come from one logical clock and are assigned in index order at each
/// rendezvous, which keeps Class II traces reproducible.
ActivationTrace execute(std::span<const Fragment> fragments, const PayloadManifest& manifest,
                        const ActionTable& actions = {});

/// Class I: strictly index-ordered, non-overlapping intervals.
bool is_sequential_trace(const ActivationTrace& trace);
/// Class II: every pair of intervals overlaps.
bool is_pairwise_overlapping(const ActivationTrace& trace);

}  // namespace kary
