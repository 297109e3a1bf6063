#include "iso/hardness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace iso {

SetCoverInstance parse_set_cover(std::istream& in) {
    SetCoverInstance inst;
    std::string line;
    bool have_k = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "elem") {
            std::string label;
            if (!(ls >> label)) throw ParseError("line " + std::to_string(lineno) + ": elem needs a label");
            inst.elements.push_back(label);
        } else if (kw == "set") {
            std::array<std::string, 3> s;
            if (!(ls >> s[0] >> s[1] >> s[2]))
                throw ParseError("line " + std::to_string(lineno) + ": set needs three labels");
            inst.sets.push_back(s);
        } else if (kw == "k") {
            if (!(ls >> inst.k)) throw ParseError("line " + std::to_string(lineno) + ": k needs a number");
            have_k = true;
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown keyword " + kw);
        }
    }
    if (!have_k) throw ParseError("missing k line");
    std::set<std::string> known(inst.elements.begin(), inst.elements.end());
    for (const auto& s : inst.sets) {
        for (const auto& x : s)
            if (!known.count(x)) throw ParseError("set uses unknown element " + x);
        if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
            throw ParseError("set elements must be distinct");
    }
    return inst;
}

SetCoverInstance parse_set_cover_string(const std::string& text) {
    std::istringstream in(text);
    return parse_set_cover(in);
}

namespace {

void check_instance(const SetCoverInstance& inst) {
    if (inst.k < 0 || inst.k > static_cast<int>(inst.sets.size()))
        throw BudgetError("budget k must lie in [0, |C|]");
    std::set<std::string> covered;
    for (const auto& s : inst.sets) covered.insert(s.begin(), s.end());
    for (const auto& x : inst.elements)
        if (!covered.count(x)) throw InstanceError("element " + x + " appears in no set");
}

} // namespace

bool set_cover_oracle(const SetCoverInstance& inst) {
    check_instance(inst);
    int m = static_cast<int>(inst.sets.size());
    if (m > 20) throw OracleTooLarge("oracle caps at 20 sets");
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != inst.k) continue;
        std::set<std::string> covered;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) covered.insert(inst.sets[i].begin(), inst.sets[i].end());
        bool all = true;
        for (const auto& x : inst.elements)
            if (!covered.count(x)) { all = false; break; }
        if (all) return true;
    }
    return false;
}

ReductionOutput generate(const SetCoverInstance& inst, int a) {
    check_instance(inst);
    if (a < 1) throw InstanceError("anchor count must be at least 1");
    int m = static_cast<int>(inst.sets.size());

    ReductionOutput out;
    out.anchors = a;
    if (a <= 4 * m)
        out.notes.push_back("warning: anchor count " + std::to_string(a) +
                            " does not exceed 4|C| = " + std::to_string(4 * m) +
                            "; the scale-1 equivalence is not guaranteed");

    // Target: top node, one node per set, anchors, one node plus one leaf
    // per element; edges top-set, set-element, element-leaf, top-anchor.
    MetricGraph& t = out.target;
    t.add_vertex("top");
    for (int i = 0; i < m; ++i) {
        t.add_vertex("set" + std::to_string(i));
        t.add_edge("top", "set" + std::to_string(i));
    }
    for (int j = 0; j < a; ++j) {
        t.add_vertex("anc" + std::to_string(j));
        t.add_edge("top", "anc" + std::to_string(j));
    }
    for (const auto& x : inst.elements) {
        t.add_vertex("x" + x);
        t.add_vertex("leaf" + x);
        t.add_edge("x" + x, "leaf" + x);
    }
    for (int i = 0; i < m; ++i)
        for (const auto& x : inst.sets[i]) t.add_edge("set" + std::to_string(i), "x" + x);

    // Source tree: root with a leaf children and |C| set children; k of the
    // set children carry three 2-edge paths, the rest carry three leaves.
    MetricGraph& s = out.source;
    s.add_vertex("root");
    for (int j = 0; j < a; ++j) {
        s.add_vertex("aleaf" + std::to_string(j));
        s.add_edge("root", "aleaf" + std::to_string(j));
    }
    for (int i = 0; i < m; ++i) {
        std::string c = "c" + std::to_string(i);
        s.add_vertex(c);
        s.add_edge("root", c);
        if (i < inst.k) {
            for (int p = 0; p < 3; ++p) {
                std::string mid = c + "p" + std::to_string(p) + "m";
                std::string end = c + "p" + std::to_string(p) + "e";
                s.add_vertex(mid);
                s.add_vertex(end);
                s.add_edge(c, mid);
                s.add_edge(mid, end);
            }
        } else {
            for (int p = 0; p < 3; ++p) {
                std::string leaf = c + "l" + std::to_string(p);
                s.add_vertex(leaf);
                s.add_edge(c, leaf);
            }
        }
    }

    int nx = static_cast<int>(inst.elements.size());
    out.notes.push_back("target: " + std::to_string(t.vertex_count()) + " nodes (= |C|+2|X|+1+a = " +
                        std::to_string(m + 2 * nx + 1 + a) + "), " + std::to_string(t.edge_count()) +
                        " edges (= 4|C|+|X|+a = " + std::to_string(4 * m + nx + a) + ")");
    out.notes.push_back("source: " + std::to_string(s.vertex_count()) + " nodes (= 4|C|+3k+1+a = " +
                        std::to_string(4 * m + 3 * inst.k + 1 + a) + "), " +
                        std::to_string(s.edge_count()) + " edges (= 4|C|+3k+a = " +
                        std::to_string(4 * m + 3 * inst.k + a) + ")");
    return out;
}

namespace {

// Every edge replaced by a path of q unit edges.
MetricGraph expand_unit(const MetricGraph& g, int q) {
    MetricGraph out;
    for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.label(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        std::string prev = g.label(ed.u);
        for (int i = 1; i < q; ++i) {
            std::string mid = g.label(ed.u) + "~" + g.label(ed.v) + "~s" + std::to_string(i);
            out.add_vertex(mid);
            out.add_edge(prev, mid);
            prev = mid;
        }
        out.add_edge(prev, g.label(ed.v));
    }
    return out;
}

} // namespace

std::pair<ReductionOutput, ReductionOutput> generate_dp_variant(const SetCoverInstance& p,
                                                                const SetCoverInstance& p_prime,
                                                                int a) {
    ReductionOutput yes = generate(p, 2 * a);
    yes.source = expand_unit(yes.source, 3);
    yes.target = expand_unit(yes.target, 4);
    yes.notes.push_back("expanded: source edges x3, target edges x4; cover-solvable scale 4/3");
    ReductionOutput no = generate(p_prime, a);
    return {std::move(yes), std::move(no)};
}

} // namespace iso
