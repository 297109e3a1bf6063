#include "iso/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace iso {

int MetricGraph::add_vertex(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(labels_.size());
    labels_.push_back(label);
    index_.emplace(label, id);
    incidence_dirty_ = true;
    return id;
}

int MetricGraph::add_edge(const std::string& a, const std::string& b, Rat length) {
    const std::string& lo = a <= b ? a : b;
    const std::string& hi = a <= b ? b : a;
    int u = add_vertex(lo);
    int v = add_vertex(hi);
    return add_edge_indices(u, v, std::move(length));
}

int MetricGraph::add_edge_indices(int a, int b, Rat length) {
    edges_.push_back(Edge{a, b, std::move(length)});
    incidence_dirty_ = true;
    return static_cast<int>(edges_.size()) - 1;
}

std::optional<int> MetricGraph::find_vertex(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> MetricGraph::edges_between(int a, int b) const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e) {
        if ((edges_[e].u == a && edges_[e].v == b) || (edges_[e].u == b && edges_[e].v == a))
            out.push_back(e);
    }
    return out;
}

const std::vector<std::vector<int>>& MetricGraph::incidence() const {
    if (incidence_dirty_) {
        incidence_.assign(labels_.size(), {});
        for (int e = 0; e < edge_count(); ++e) {
            incidence_[edges_[e].u].push_back(e);
            if (edges_[e].v != edges_[e].u) incidence_[edges_[e].v].push_back(e);
        }
        incidence_dirty_ = false;
    }
    return incidence_;
}

int MetricGraph::degree(int v) const {
    return static_cast<int>(incidence()[v].size());
}

Rat MetricGraph::perimeter() const {
    Rat total(0);
    for (const auto& e : edges_) total += e.length;
    return total;
}

bool MetricGraph::connected() const {
    if (vertex_count() == 0) return true;
    std::vector<char> seen(vertex_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    const auto& inc = incidence();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : inc[v]) {
            int w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool MetricGraph::same_structure(const MetricGraph& other) const {
    if (labels_ != other.labels_) return false;
    if (edge_count() != other.edge_count()) return false;
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& a = edges_[e];
        const Edge& b = other.edges_[e];
        if (a.u != b.u || a.v != b.v || a.length != b.length) return false;
    }
    return true;
}

ValidationReport validate(const MetricGraph& g) {
    ValidationReport r;
    if (g.edge_count() == 0) r.trivial = true;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (ed.u == ed.v) {
            r.valid = false;
            r.problems.push_back("SelfLoop: edge " + std::to_string(e));
        }
        if (ed.length <= 0) {
            r.valid = false;
            r.problems.push_back("NonpositiveLength: edge " + std::to_string(e));
        }
        if (ed.u < 0 || ed.u >= g.vertex_count() || ed.v < 0 || ed.v >= g.vertex_count()) {
            r.valid = false;
            r.problems.push_back("DanglingEndpoint: edge " + std::to_string(e));
        }
    }
    r.connected = g.connected();
    if (!r.connected) {
        r.valid = false;
        r.problems.push_back("Disconnected");
    }
    return r;
}

std::string format_point(const Point& p, const MetricGraph& g) {
    if (p.is_vertex()) return "v " + g.label(p.vertex);
    const auto& e = g.edge(p.edge);
    return "e " + g.label(e.u) + " " + g.label(e.v) + " " + format_rational(p.offset);
}

namespace {

// Offset of point p on edge e, if p lies on it.
std::optional<Rat> offset_on_edge(const Point& p, int e, const MetricGraph& g) {
    if (!p.is_vertex()) {
        if (p.edge == e) return p.offset;
        return std::nullopt;
    }
    const auto& ed = g.edge(e);
    if (ed.u == p.vertex) return Rat(0);
    if (ed.v == p.vertex) return Rat(1);
    return std::nullopt;
}

} // namespace

std::optional<WalkSegment> walk_step(const Point& a, const Point& b, const MetricGraph& g) {
    if (a == b) return std::nullopt;
    if (a.is_vertex() && b.is_vertex()) {
        auto conn = g.edges_between(a.vertex, b.vertex);
        if (conn.empty()) throw BrokenWalk("walk step between non-adjacent vertices");
        int e = conn.front();
        return WalkSegment{e, Rat(0), Rat(1)};
    }
    // At least one interior point: the common edge is pinned by it.
    int e = a.is_vertex() ? b.edge : a.edge;
    auto oa = offset_on_edge(a, e, g);
    auto ob = offset_on_edge(b, e, g);
    if (!oa || !ob) throw BrokenWalk("walk step points do not share an edge");
    if (*oa == *ob) return std::nullopt;
    return WalkSegment{e, std::min(*oa, *ob), std::max(*oa, *ob)};
}

std::vector<WalkSegment> walk_segments(const Walk& w, const MetricGraph& g) {
    std::vector<WalkSegment> out;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        auto seg = walk_step(w[i], w[i + 1], g);
        if (seg) out.push_back(*seg);
    }
    return out;
}

Rat walk_length(const Walk& w, const MetricGraph& g) {
    Rat total(0);
    for (const auto& seg : walk_segments(w, g))
        total += (seg.hi - seg.lo) * g.edge(seg.edge).length;
    return total;
}

DistanceTable::DistanceTable(const MetricGraph& g) : n_(g.vertex_count()) {
    d_.assign(n_, std::vector<std::optional<Rat>>(n_));
    next_.assign(n_, std::vector<int>(n_, -1));
    for (int i = 0; i < n_; ++i) {
        d_[i][i] = Rat(0);
        next_[i][i] = i;
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (!d_[ed.u][ed.v] || *d_[ed.u][ed.v] > ed.length) {
            d_[ed.u][ed.v] = d_[ed.v][ed.u] = ed.length;
            next_[ed.u][ed.v] = ed.v;
            next_[ed.v][ed.u] = ed.u;
        }
    }
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i) {
            if (!d_[i][k]) continue;
            for (int j = 0; j < n_; ++j) {
                if (!d_[k][j]) continue;
                Rat via = *d_[i][k] + *d_[k][j];
                if (!d_[i][j] || *d_[i][j] > via) {
                    d_[i][j] = via;
                    next_[i][j] = next_[i][k];
                }
            }
        }
}

std::vector<int> DistanceTable::path(int a, int b) const {
    if (!d_[a][b]) return {};
    std::vector<int> p{a};
    while (a != b) {
        a = next_[a][b];
        p.push_back(a);
    }
    return p;
}

MetricGraph parse_graph(std::istream& in) {
    MetricGraph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            std::string label;
            if (!(ls >> label)) throw ParseError("line " + std::to_string(lineno) + ": missing vertex label");
            g.add_vertex(label);
        } else if (tag == "e") {
            std::string a, b, len;
            if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": malformed edge");
            if (!g.find_vertex(a) || !g.find_vertex(b))
                throw ParseError("line " + std::to_string(lineno) + ": edge references an undeclared vertex");
            if (a == b) throw ParseError("line " + std::to_string(lineno) + ": self-loops are not allowed");
            Rat length(1);
            if (ls >> len) {
                auto r = parse_rational(len);
                if (!r) throw ParseError("line " + std::to_string(lineno) + ": bad length '" + len + "'");
                length = *r;
            }
            if (length <= 0)
                throw ParseError("line " + std::to_string(lineno) + ": edge length must be positive");
            g.add_edge(a, b, length);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + tag + "'");
        }
    }
    return g;
}

MetricGraph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const MetricGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) out << "v " << g.label(v) << "\n";
    for (const auto& e : g.edges())
        out << "e " << g.label(e.u) << " " << g.label(e.v) << " " << format_rational(e.length) << "\n";
}

} // namespace iso
