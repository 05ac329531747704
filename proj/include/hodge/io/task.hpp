#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hodge/lefschetz/hodge.hpp"
#include "hodge/monodromy/mf_property.hpp"
#include "hodge/monodromy/relative.hpp"
#include "hodge/nearby/nilsson.hpp"
#include "hodge/rees/koszul.hpp"

namespace hodge {

struct MonodromyTask {
  NilpotentOperator n;
  Rational center{0};
  friend bool operator==(const MonodromyTask&, const MonodromyTask&) = default;
};

struct RelativeMonodromyTask {
  NilpotentOperator n;
  Filtration l;
  friend bool operator==(const RelativeMonodromyTask&, const RelativeMonodromyTask&) = default;
};

struct MfTask {
  std::vector<NilpotentOperator> ns;
  friend bool operator==(const MfTask&, const MfTask&) = default;
};

struct LefschetzTask {
  GradedBilinearStructure g;
  std::optional<std::map<Multidegree, RationalHodgeStructure>> hodge;
  friend bool operator==(const LefschetzTask&, const LefschetzTask&) = default;
};

struct CompatTask {
  MultiFiltration mf;
  friend bool operator==(const CompatTask&, const CompatTask&) = default;
};

/// Koszul homology and regularity of `sequence` (all variables in order
/// when empty) on an explicit module.
struct KoszulTask {
  ReesModule module;
  std::vector<std::size_t> sequence;
  friend bool operator==(const KoszulTask&, const KoszulTask&) = default;
};

struct ReesTask {
  MultiFiltration mf;
  friend bool operator==(const ReesTask&, const ReesTask&) = default;
};

struct NilssonTask {
  MonodromicModule module;
  RationalIndex alpha;
  std::vector<std::size_t> k;
  friend bool operator==(const NilssonTask&, const NilssonTask&) = default;
};

/// The V_k table: N, Q, F and W formulas and the checks built on them.
struct VkTask {
  std::size_t k = 0;
  friend bool operator==(const VkTask&, const VkTask&) = default;
};

using TaskData = std::variant<MonodromyTask, RelativeMonodromyTask, MfTask, LefschetzTask, CompatTask, KoszulTask,
                              ReesTask, NilssonTask, VkTask>;

/// One document = one task; `label` names its provenance (fixture or file).
struct Task {
  std::string label;
  TaskData data;
  friend bool operator==(const Task&, const Task&) = default;
};

inline const char* task_kind(const TaskData& d) {
  static constexpr const char* names[] = {"monodromy", "relmono", "mf",     "lefschetz", "compat",
                                          "koszul",    "rees",    "nilsson", "vk"};
  return names[d.index()];
}

}  // namespace hodge
