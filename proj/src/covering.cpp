#include "iso/covering.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace iso {

Rat doubled_length(const CoverageProfile& profile, const MetricGraph& dst) {
    Rat total(0);
    for (int e = 0; e < static_cast<int>(profile.per_edge.size()); ++e)
        for (const auto& iv : profile.per_edge[e])
            if (iv.multiplicity >= 2) total += (iv.hi - iv.lo) * dst.edge(e).length;
    return total;
}

namespace {

CoverageProfile build_profile(const std::vector<WalkSegment>& segments, const MetricGraph& dst) {
    CoverageProfile profile;
    profile.per_edge.resize(dst.edge_count());
    std::vector<std::vector<std::pair<Rat, Rat>>> by_edge(dst.edge_count());
    for (const auto& s : segments) by_edge[s.edge].emplace_back(s.lo, s.hi);

    for (int e = 0; e < dst.edge_count(); ++e) {
        std::vector<Rat> cuts{Rat(0), Rat(1)};
        for (const auto& [lo, hi] : by_edge[e]) {
            cuts.push_back(lo);
            cuts.push_back(hi);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        auto& out = profile.per_edge[e];
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            int mult = 0;
            for (const auto& [lo, hi] : by_edge[e])
                if (lo <= cuts[i] && cuts[i + 1] <= hi) ++mult;
            if (!out.empty() && out.back().multiplicity == mult && out.back().hi == cuts[i])
                out.back().hi = cuts[i + 1];
            else
                out.push_back({cuts[i], cuts[i + 1], mult});
        }
    }
    return profile;
}

bool valid_point(const Point& p, const MetricGraph& g, std::string& why) {
    if (p.is_vertex()) {
        if (p.vertex < 0 || p.vertex >= g.vertex_count()) {
            why = "unknown vertex";
            return false;
        }
        return true;
    }
    if (p.edge < 0 || p.edge >= g.edge_count()) {
        why = "unknown edge";
        return false;
    }
    if (p.offset <= 0 || p.offset >= 1) {
        why = "interior offset must be strictly inside (0,1)";
        return false;
    }
    return true;
}

} // namespace

VerifyReport verify(const MetricGraph& src, const MetricGraph& dst, const FoldingMap& fm) {
    VerifyReport report;
    report.total_routed = 0;
    report.total_budget = 0;
    report.doubled = 0;

    if (fm.scale <= 0) {
        report.errors.push_back("NonpositiveScale");
        return report;
    }
    for (int u = 0; u < src.vertex_count(); ++u) {
        auto it = fm.placement.find(u);
        if (it == fm.placement.end()) {
            report.errors.push_back("MissingPlacement: " + src.label(u));
            continue;
        }
        std::string why;
        if (!valid_point(it->second, dst, why))
            report.errors.push_back("BadPlacement: " + src.label(u) + " (" + why + ")");
    }
    if (!report.errors.empty()) return report;

    std::vector<WalkSegment> segments;
    for (int e = 0; e < src.edge_count(); ++e) {
        const auto& se = src.edge(e);
        auto it = fm.routes.find(e);
        if (it == fm.routes.end()) {
            report.errors.push_back("MissingRoute: edge " + std::to_string(e));
            continue;
        }
        const Walk& w = it->second;
        if (w.empty()) {
            report.errors.push_back("RouteEndpointError: empty route for edge " + std::to_string(e));
            continue;
        }
        if (!(w.front() == fm.placement.at(se.u)) || !(w.back() == fm.placement.at(se.v))) {
            report.errors.push_back("RouteEndpointError: edge " + src.label(se.u) + "-" +
                                    src.label(se.v));
            continue;
        }
        Rat budget = fm.scale * se.length;
        report.total_budget += budget;
        Rat len;
        try {
            len = walk_length(w, dst);
        } catch (const BrokenWalk& b) {
            report.errors.push_back(std::string("BrokenWalk: edge ") + std::to_string(e) + ": " +
                                    b.what());
            continue;
        }
        report.total_routed += len;
        if (len > budget) {
            report.errors.push_back("LengthExcess: edge " + src.label(se.u) + "-" + src.label(se.v) +
                                    " routed " + format_rational(len) + " > budget " +
                                    format_rational(budget));
            continue;
        }
        if (len < budget) {
            // Slack must be realizable by a back-and-forth folded into an
            // incident target edge.
            bool realizable = true;
            if (w.size() == 1 && w.front().is_vertex() && dst.degree(w.front().vertex) == 0)
                realizable = false;
            if (!realizable)
                report.errors.push_back("SlackUnrealizable: edge " + std::to_string(e));
        }
        auto segs = walk_segments(w, dst);
        segments.insert(segments.end(), segs.begin(), segs.end());
    }
    report.profile = build_profile(segments, dst);
    for (int e = 0; e < dst.edge_count(); ++e)
        for (const auto& iv : report.profile.per_edge[e])
            if (iv.multiplicity == 0)
                report.errors.push_back("CoverageGap: edge " + dst.label(dst.edge(e).u) + "-" +
                                        dst.label(dst.edge(e).v) + " [" + format_rational(iv.lo) +
                                        "," + format_rational(iv.hi) + "]");
    report.doubled = doubled_length(report.profile, dst);
    report.accepted = report.errors.empty();
    return report;
}

FoldingMap identity_fold(const MetricGraph& g) {
    FoldingMap fm;
    fm.scale = 1;
    for (int v = 0; v < g.vertex_count(); ++v) fm.placement[v] = Point::at_vertex(v);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        // The interior midpoint pins the edge, which matters for multi-edges.
        fm.routes[e] = Walk{Point::at_vertex(ed.u), Point::interior(e, rat(1, 2)),
                            Point::at_vertex(ed.v)};
    }
    return fm;
}

namespace {

Point parse_point(std::istringstream& ls, const MetricGraph& g, int lineno) {
    std::string kind;
    if (!(ls >> kind)) throw ParseError("line " + std::to_string(lineno) + ": missing point");
    if (kind == "v") {
        std::string label;
        if (!(ls >> label)) throw ParseError("line " + std::to_string(lineno) + ": missing vertex");
        auto v = g.find_vertex(label);
        if (!v) throw ParseError("line " + std::to_string(lineno) + ": unknown vertex " + label);
        return Point::at_vertex(*v);
    }
    if (kind == "e") {
        std::string a, b, off;
        if (!(ls >> a >> b >> off))
            throw ParseError("line " + std::to_string(lineno) + ": malformed interior point");
        auto va = g.find_vertex(a), vb = g.find_vertex(b);
        if (!va || !vb) throw ParseError("line " + std::to_string(lineno) + ": unknown endpoint");
        auto conn = g.edges_between(*va, *vb);
        if (conn.empty())
            throw ParseError("line " + std::to_string(lineno) + ": no edge " + a + "-" + b);
        int e = conn.front();
        auto r = parse_rational(off);
        if (!r) throw ParseError("line " + std::to_string(lineno) + ": bad offset " + off);
        Rat offset = *r;
        if (g.edge(e).u == *vb) offset = Rat(1) - offset; // given against orientation
        return Point::interior(e, offset);
    }
    throw ParseError("line " + std::to_string(lineno) + ": bad point kind '" + kind + "'");
}

} // namespace

FoldingMap parse_certificate(std::istream& in, const MetricGraph& src, const MetricGraph& dst) {
    FoldingMap fm;
    fm.scale = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Route point lists use ';' separators; treat them as spaces.
        std::string scrubbed = line;
        std::replace(scrubbed.begin(), scrubbed.end(), ';', ' ');
        std::istringstream ls(scrubbed);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "scale") {
            std::string r;
            if (!(ls >> r)) throw ParseError("line " + std::to_string(lineno) + ": missing scale");
            auto s = parse_rational(r);
            if (!s) throw ParseError("line " + std::to_string(lineno) + ": bad scale " + r);
            fm.scale = *s;
        } else if (tag == "place") {
            std::string label;
            if (!(ls >> label)) throw ParseError("line " + std::to_string(lineno) + ": missing vertex");
            auto u = src.find_vertex(label);
            if (!u) throw ParseError("line " + std::to_string(lineno) + ": unknown source vertex " + label);
            fm.placement[*u] = parse_point(ls, dst, lineno);
        } else if (tag == "route") {
            std::string a, b;
            if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": malformed route");
            auto va = src.find_vertex(a), vb = src.find_vertex(b);
            if (!va || !vb)
                throw ParseError("line " + std::to_string(lineno) + ": unknown source vertex");
            int k = 0;
            std::string tok;
            if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing ':'");
            if (tok != ":") {
                k = std::stoi(tok);
                if (!(ls >> tok) || tok != ":")
                    throw ParseError("line " + std::to_string(lineno) + ": missing ':'");
            }
            auto conn = src.edges_between(*va, *vb);
            if (k < 0 || k >= static_cast<int>(conn.size()))
                throw ParseError("line " + std::to_string(lineno) + ": no such source edge");
            int e = conn[k];
            Walk w;
            while (ls >> std::ws, !ls.eof()) {
                w.push_back(parse_point(ls, dst, lineno));
                ls >> std::ws;
            }
            // Routes are stored against the stored edge orientation.
            if (src.edge(e).u == *vb) std::reverse(w.begin(), w.end());
            fm.routes[e] = std::move(w);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + tag + "'");
        }
    }
    if (fm.scale <= 0) throw ParseError("certificate missing positive scale");
    return fm;
}

FoldingMap parse_certificate_string(const std::string& text, const MetricGraph& src,
                                    const MetricGraph& dst) {
    std::istringstream in(text);
    return parse_certificate(in, src, dst);
}

void write_certificate(std::ostream& out, const FoldingMap& fm, const MetricGraph& src,
                       const MetricGraph& dst) {
    out << "scale " << format_rational(fm.scale) << "\n";
    for (const auto& [u, p] : fm.placement)
        out << "place " << src.label(u) << " " << format_point(p, dst) << "\n";
    for (const auto& [e, w] : fm.routes) {
        const auto& se = src.edge(e);
        auto conn = src.edges_between(se.u, se.v);
        int k = static_cast<int>(std::find(conn.begin(), conn.end(), e) - conn.begin());
        out << "route " << src.label(se.u) << " " << src.label(se.v);
        if (conn.size() > 1) out << " " << k;
        out << " :";
        for (size_t i = 0; i < w.size(); ++i)
            out << (i ? " ; " : " ") << format_point(w[i], dst);
        out << "\n";
    }
}

} // namespace iso
