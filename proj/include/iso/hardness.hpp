#pragma once

#include "iso/graph.hpp"

#include <array>
#include <iosfwd>

namespace iso {

// Set cover with sets of exactly three elements.
struct SetCoverInstance {
    std::vector<std::string> elements;
    std::vector<std::array<std::string, 3>> sets;
    int k = 0;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance text: `elem <label>` lines, `set <l1> <l2> <l3>` lines, `k <n>`.
SetCoverInstance parse_set_cover(std::istream& in);
SetCoverInstance parse_set_cover_string(const std::string& text);

// True iff some k-subset of the sets covers every element. Exhaustive,
// capped at 20 sets.
bool set_cover_oracle(const SetCoverInstance& inst);

struct ReductionOutput {
    MetricGraph source; // a tree
    MetricGraph target;
    int anchors = 0;
    std::vector<std::string> notes;
};

// Unit-length reduction instance: the source tree folds onto the target at
// scale 1 exactly when the set cover is solvable. Anchor count a > 4|C| is
// required for soundness; smaller values are generated with a warning note.
ReductionOutput generate(const SetCoverInstance& inst, int a);

// Exact-optimum variant: P' as in generate; P with 2a anchors, source
// edges expanded into 3 unit edges and target edges into 4, shifting the
// solvable-cover scale to 4/3.
std::pair<ReductionOutput, ReductionOutput> generate_dp_variant(const SetCoverInstance& p,
                                                                const SetCoverInstance& p_prime,
                                                                int a);

} // namespace iso
