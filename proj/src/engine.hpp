#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "atam.hpp"

namespace tastp {

struct AttachmentEvent {
  Position position;
  TileType tile;
  uint32_t strength = 0;  // always the attachment strength at position
  bool operator==(const AttachmentEvent&) const = default;
};

struct SimulationBounds {
  // growth outside this region is out of budget (absent = unbounded)
  std::optional<Shape> region;
  size_t max_assemblies = 200000;  // distinct producible assemblies tracked
  size_t max_size = 100000;        // tiles in any single assembly
};

enum class Verdict : uint8_t { yes, no, resources_exceeded };

// every attachable (position, tile) pair at temperature tas.tau, sorted by
// (position, tile index) so enumeration order and witnesses are reproducible
std::vector<AttachmentEvent> frontier(const Tas& tas, const Assembly& a);

// apply one attachment; the event must be in frontier(tas, a), down to the
// recorded strength, otherwise the step is rejected
Assembly step(const Tas& tas, const Assembly& a, const AttachmentEvent& e);

struct TerminalReport {
  bool exceeded = false;
  size_t explored = 0;              // assemblies expanded before stopping
  std::vector<Assembly> terminals;  // complete exactly when !exceeded
};

// exact set of producible assemblies with empty frontier, by exhaustive
// memoized search from the seed; deterministic output order
TerminalReport terminal_assemblies(const Tas& tas, const SimulationBounds& bounds);

// one terminal assembly and every producible assembly grows into it. a
// union-growth fast path covers deterministic systems of any size; the
// general case falls back to exhaustive search under the given bounds
Verdict is_directed(const Tas& tas, const SimulationBounds& bounds);

struct StrictAssemblyVerdict {
  Verdict outcome = Verdict::resources_exceeded;
  // present exactly when outcome is no: a producible assembly that leaves
  // the shape or terminates without covering it
  std::optional<Assembly> witness;
};

// the shape of every terminal producible assembly is s and no producible
// assembly ever places a tile outside s
StrictAssemblyVerdict strictly_self_assembles(const Tas& tas, const Shape& s,
                                              const SimulationBounds& bounds = {});

// least k <= max_types such that some directed TAS with k tile types, glue
// strengths in [1, tau] on at most max_labels distinct labels, and a
// single-tile seed strictly self-assembles s; absent if none. enumeration
// is modulo label renaming. hard limits: |s| <= 6, max_types <= 4; anything
// larger is refused rather than answered wrongly
std::optional<uint32_t> tile_complexity_oracle(const Shape& s, uint32_t tau,
                                               uint32_t max_types,
                                               uint32_t max_labels);

// least tile count over temperatures 1..tau
std::optional<uint32_t> tile_complexity_up_to(const Shape& s, uint32_t tau,
                                              uint32_t max_types,
                                              uint32_t max_labels);

}  // namespace tastp
