#pragma once

#include "iso/rational.hpp"

#include <string>
#include <vector>

namespace iso {

enum class Relation { LessEq, GreaterEq, Equal };

// Linear program over nonnegative variables, objective minimized.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, Rat>> terms; // (variable, coefficient)
        Relation rel = Relation::LessEq;
        Rat rhs;
        std::string name;
    };

    int num_vars = 0;
    std::vector<std::string> var_names;
    std::vector<std::pair<int, Rat>> objective;
    std::vector<Row> rows;

    int add_var(const std::string& name) {
        var_names.push_back(name);
        return num_vars++;
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat objective;
    Rat dual_objective; // equals objective at optimality (strong duality)
    std::vector<Rat> x;
    std::vector<Rat> duals; // one multiplier per row
};

// Two-phase primal simplex with exact rational pivots and Bland's rule.
LpSolution solve_simplex(const LinearProgram& lp);

} // namespace iso
