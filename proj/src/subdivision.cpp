#include "iso/subdivision.hpp"

#include <algorithm>

namespace iso {

Subdivision::Subdivision(const MetricGraph& base, std::vector<std::vector<Rat>> aux_offsets)
    : base_(base) {
    if (aux_offsets.size() != static_cast<size_t>(base.edge_count()))
        throw std::invalid_argument("aux offset list size must match edge count");

    for (int v = 0; v < base.vertex_count(); ++v) derived_.add_vertex(base.label(v));
    vertex_point_.reserve(base.vertex_count());
    for (int v = 0; v < base.vertex_count(); ++v) vertex_point_.push_back(Point::at_vertex(v));

    chains_.resize(base.edge_count());
    for (int e = 0; e < base.edge_count(); ++e) {
        auto& offs = aux_offsets[e];
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        for (const Rat& o : offs)
            if (o <= 0 || o >= 1)
                throw std::invalid_argument("auxiliary offset must be strictly inside (0,1)");

        const auto& be = base.edge(e);
        std::vector<int>& chain = chains_[e];
        chain.push_back(be.u);
        int i = 0;
        for (const Rat& o : offs) {
            std::string label = "@" + base.label(be.u) + "~" + base.label(be.v) + "~e" +
                                std::to_string(e) + "~" + std::to_string(i++);
            int dv = derived_.add_vertex(label);
            vertex_point_.push_back(Point::interior(e, o));
            chain.push_back(dv);
        }
        chain.push_back(be.v);

        Rat prev(0);
        for (size_t j = 0; j + 1 < chain.size(); ++j) {
            Rat next = j + 1 < chain.size() - 1 ? offs[j] : Rat(1);
            derived_.add_edge_indices(chain[j], chain[j + 1], (next - prev) * be.length);
            segments_.push_back(Segment{e, prev, next});
            prev = next;
        }
    }
}

std::optional<int> Subdivision::locate(const Point& p) const {
    if (p.is_vertex()) return p.vertex;
    const auto& chain = chains_[p.edge];
    for (size_t j = 1; j + 1 < chain.size(); ++j) {
        const Point& q = vertex_point_[chain[j]];
        if (q.offset == p.offset) return chain[j];
    }
    return std::nullopt;
}

MetricGraph Subdivision::splice() const {
    MetricGraph g;
    for (int v = 0; v < base_.vertex_count(); ++v) g.add_vertex(base_.label(v));
    for (int e = 0; e < base_.edge_count(); ++e) {
        Rat total(0);
        for (int de = 0; de < derived_.edge_count(); ++de)
            if (segments_[de].base_edge == e) total += derived_.edge(de).length;
        g.add_edge_indices(base_.edge(e).u, base_.edge(e).v, total);
    }
    return g;
}

Subdivision subdivide(const MetricGraph& g, unsigned q) {
    if (q == 0) throw InvalidGranularity("subdivision granularity must be >= 1");
    std::vector<std::vector<Rat>> offsets(g.edge_count());
    for (auto& offs : offsets)
        for (unsigned i = 1; i < q; ++i) offs.push_back(Rat(static_cast<long>(i), static_cast<long>(q)));
    return Subdivision(g, std::move(offsets));
}

MetricGraph subdivide_plain(const MetricGraph& g, unsigned q) {
    if (q == 0) throw InvalidGranularity("subdivision granularity must be >= 1");
    MetricGraph out;
    for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.label(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        int prev = ed.u;
        for (unsigned i = 1; i < q; ++i) {
            int mid = out.add_vertex(g.label(ed.u) + "~" + g.label(ed.v) + "~e" +
                                     std::to_string(e) + "~s" + std::to_string(i));
            out.add_edge_indices(prev, mid, ed.length / static_cast<long>(q));
            prev = mid;
        }
        out.add_edge_indices(prev, ed.v, ed.length / static_cast<long>(q));
    }
    return out;
}

} // namespace iso
