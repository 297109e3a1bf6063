#pragma once

#include "iso/covering.hpp"
#include "iso/simplex.hpp"
#include "iso/subdivision.hpp"

#include <map>
#include <optional>

namespace iso {

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full mixed-integer model of the covering problem over a subdivided
// target. Positions of original target vertices are pinned 0/1 relative to
// each edge and folded into the constraints as constants; only auxiliary
// vertices carry position variables.
struct IlpModel {
    enum class VarKind { Binary, UnitInterval, Nonneg };

    struct Var {
        std::string name;
        VarKind kind;
    };
    struct Con {
        std::string name;
        std::string group;
        std::vector<std::pair<int, Rat>> terms;
        Relation rel = Relation::LessEq;
        Rat rhs;
    };

    std::vector<Var> vars;
    std::vector<Con> cons;
    std::vector<std::pair<int, Rat>> objective; // minimized

    std::map<std::string, int> group_counts;
    int pinned_positions = 0;

    int var_index(const std::string& name) const;
};

// Variable families, one block per source edge s over the derived target:
// directed flow f, directed edge decision e, directed length l, source
// reachability r; shared placement m, auxiliary positions a, objective o.
// c auxiliary vertices per target edge; alpha is the flow cap and scale
// bound, default |E(dst)|.
IlpModel build_model(const MetricGraph& src, const MetricGraph& dst, int c,
                     std::optional<Rat> alpha = std::nullopt);

// Same model over an explicitly given subdivision (used for certificate
// substitution checks, where the auxiliaries come from the certificate).
IlpModel build_model_over(const MetricGraph& src, const Subdivision& sub, const Rat& alpha);

enum class IlpFormat { LpText, Mps };

// Deterministic serialization. Coefficients appear as exact finite
// decimals when one exists; otherwise the whole row is scaled to integers
// by the least common denominator, recorded in a comment the internal
// reader understands.
std::string write_model(const IlpModel& m, IlpFormat format);

// Internal reader for the LP-text form; write(parse(write(m))) is
// byte-identical to write(m).
IlpModel parse_lp_text(const std::string& text);

struct SubstitutionReport {
    bool ok = false;
    Rat objective;
    std::vector<std::string> violations;
};

// Substitutes the assignment induced by a certificate into the model built
// over the certificate's own auxiliary structure and checks every
// constraint with o = fm.scale.
SubstitutionReport check_certificate(const MetricGraph& src, const MetricGraph& dst,
                                     const FoldingMap& fm);

// Reconstructs a certificate from an external solver's variable values
// (lines of `name value`, values rational `p/q` or decimal), for a model
// exported with c auxiliaries per edge.
FoldingMap fold_from_solution(const std::string& text, const MetricGraph& src,
                              const MetricGraph& dst, int c);

} // namespace iso
