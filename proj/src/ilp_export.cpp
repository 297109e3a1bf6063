#include "iso/ilp_export.hpp"

#include "iso/lp_refine.hpp"

#include <algorithm>
#include <sstream>

namespace iso {

namespace {

std::string vname_f(int s, int x, int y) {
    return "f_s" + std::to_string(s) + "_x" + std::to_string(x) + "_y" + std::to_string(y);
}
std::string vname_e(int s, int x, int y) {
    return "e_s" + std::to_string(s) + "_x" + std::to_string(x) + "_y" + std::to_string(y);
}
std::string vname_l(int s, int x, int y) {
    return "l_s" + std::to_string(s) + "_x" + std::to_string(x) + "_y" + std::to_string(y);
}
std::string vname_r(int s, int n) {
    return "r_s" + std::to_string(s) + "_n" + std::to_string(n);
}
std::string vname_m(int u, int n) {
    return "m_u" + std::to_string(u) + "_n" + std::to_string(n);
}
std::string vname_a(int n) { return "a_n" + std::to_string(n); }

// Finite decimal expansion, when the denominator divides a power of ten.
std::optional<std::string> decimal_form(const Rat& r) {
    mpz_class den = r.get_den();
    int twos = 0, fives = 0;
    while (den % 2 == 0) den /= 2, ++twos;
    while (den % 5 == 0) den /= 5, ++fives;
    if (den != 1) return std::nullopt;
    int k = std::max(twos, fives);
    mpz_class pow10 = 1;
    for (int i = 0; i < k; ++i) pow10 *= 10;
    mpz_class scaled = r.get_num() * (pow10 / r.get_den());
    std::string sign = scaled < 0 ? "-" : "";
    mpz_class mag = abs(scaled);
    mpz_class ip = mag / pow10, fp = mag % pow10;
    if (k == 0 || fp == 0) return sign + ip.get_str();
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), k - frac.size(), '0');
    while (frac.back() == '0') frac.pop_back();
    return sign + ip.get_str() + "." + frac;
}

// Row scale making every coefficient a finite decimal (1 when already so).
mpz_class row_scale(const IlpModel::Con& con) {
    mpz_class l = 1;
    auto fold = [&](const Rat& r) {
        if (!decimal_form(r)) {
            mpz_class d = r.get_den();
            l = lcm(l, d);
        }
    };
    for (const auto& [v, c] : con.terms) fold(c);
    fold(con.rhs);
    return l;
}

std::string rel_text(Relation r) {
    switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    default: return "=";
    }
}

} // namespace

int IlpModel::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

IlpModel build_model_over(const MetricGraph& src, const Subdivision& sub, const Rat& alpha) {
    const MetricGraph& derived = sub.derived();
    const MetricGraph& base = sub.base();
    const int nd = derived.vertex_count();
    const int ed = derived.edge_count();

    IlpModel m;
    auto add_var = [&](std::string name, IlpModel::VarKind kind) {
        m.vars.push_back({std::move(name), kind});
        return static_cast<int>(m.vars.size()) - 1;
    };
    auto add_con = [&](IlpModel::Con con) {
        ++m.group_counts[con.group];
        m.cons.push_back(std::move(con));
    };

    int var_o = add_var("o", IlpModel::VarKind::Nonneg);
    m.objective.emplace_back(var_o, Rat(1));

    // Directed arc 2*de (forward, lower->higher) / 2*de+1 (backward).
    auto arc_ends = [&](int arc) {
        const auto& e = derived.edge(arc / 2);
        return arc % 2 == 0 ? std::pair<int, int>{e.u, e.v} : std::pair<int, int>{e.v, e.u};
    };

    std::vector<std::vector<int>> vf(src.edge_count()), ve(src.edge_count()),
        vl(src.edge_count()), vr(src.edge_count());
    for (int s = 0; s < src.edge_count(); ++s) {
        vf[s].resize(2 * ed);
        ve[s].resize(2 * ed);
        vl[s].resize(2 * ed);
        for (int arc = 0; arc < 2 * ed; ++arc) {
            auto [x, y] = arc_ends(arc);
            vf[s][arc] = add_var(vname_f(s, x, y), IlpModel::VarKind::Nonneg);
            ve[s][arc] = add_var(vname_e(s, x, y), IlpModel::VarKind::Binary);
            vl[s][arc] = add_var(vname_l(s, x, y), IlpModel::VarKind::UnitInterval);
        }
        vr[s].resize(nd);
        for (int n = 0; n < nd; ++n)
            vr[s][n] = add_var(vname_r(s, n), IlpModel::VarKind::Binary);
    }
    std::vector<std::vector<int>> vm(src.vertex_count(), std::vector<int>(nd));
    for (int u = 0; u < src.vertex_count(); ++u)
        for (int n = 0; n < nd; ++n)
            vm[u][n] = add_var(vname_m(u, n), IlpModel::VarKind::Binary);
    std::vector<int> va(nd, -1);
    for (int n = base.vertex_count(); n < nd; ++n)
        va[n] = add_var(vname_a(n), IlpModel::VarKind::UnitInterval);
    m.pinned_positions = 2 * base.edge_count();

    // Position of a chain vertex as (variable, constant): original target
    // vertices are the 0/1 pins of their edge.
    auto pos = [&](int base_edge, int derived_vertex) -> std::pair<int, Rat> {
        const auto& chain = sub.chain(base_edge);
        if (derived_vertex == chain.front()) return {-1, Rat(0)};
        if (derived_vertex == chain.back()) return {-1, Rat(1)};
        return {va[derived_vertex], Rat(0)};
    };

    std::vector<std::vector<int>> incident(nd); // derived vertex -> incident derived edges
    for (int de = 0; de < ed; ++de) {
        incident[derived.edge(de).u].push_back(de);
        incident[derived.edge(de).v].push_back(de);
    }

    for (int s = 0; s < src.edge_count(); ++s) {
        std::string tag = "_s" + std::to_string(s);
        for (int arc = 0; arc < 2 * ed; ++arc) {
            auto [x, y] = arc_ends(arc);
            std::string atag = tag + "_x" + std::to_string(x) + "_y" + std::to_string(y);
            add_con({"ef_lo" + atag, "edge_flow",
                     {{ve[s][arc], Rat(1)}, {vf[s][arc], Rat(-1)}}, Relation::LessEq, Rat(0)});
            add_con({"ef_hi" + atag, "edge_flow",
                     {{vf[s][arc], Rat(1)}, {ve[s][arc], -alpha}}, Relation::LessEq, Rat(0)});
            add_con({"er" + atag, "edge_reach",
                     {{ve[s][arc], Rat(1)}, {vr[s][x], Rat(-1)}}, Relation::LessEq, Rat(0)});
            add_con({"le" + atag, "edge_length",
                     {{vl[s][arc], Rat(1)}, {ve[s][arc], Rat(-1)}}, Relation::LessEq, Rat(0)});
        }
        for (int n = 0; n < nd; ++n) {
            IlpModel::Con con{"reach" + tag + "_n" + std::to_string(n), "edge_reach",
                              {{vr[s][n], Rat(1)}}, Relation::LessEq, Rat(0)};
            for (int de : incident[n])
                for (int d = 0; d < 2; ++d) con.terms.emplace_back(ve[s][2 * de + d], Rat(-1));
            add_con(std::move(con));
        }
        for (int de = 0; de < ed; ++de) {
            const auto& e = derived.edge(de);
            int f = sub.segment(de).base_edge;
            auto [xv, xc] = pos(f, e.u);
            auto [yv, yc] = pos(f, e.v);
            std::string etag = tag + "_e" + std::to_string(de);
            for (int d = 0; d < 2; ++d) {
                int arc = 2 * de + d;
                std::string dtag = etag + (d == 0 ? "f" : "b");
                // l <= a_y - a_x
                IlpModel::Con up{"lub" + dtag, "edge_length",
                                 {{vl[s][arc], Rat(1)}}, Relation::LessEq, yc - xc};
                if (yv >= 0) up.terms.emplace_back(yv, Rat(-1));
                if (xv >= 0) up.terms.emplace_back(xv, Rat(1));
                add_con(std::move(up));
                // l - a_y + a_x >= e - 1
                IlpModel::Con lo{"llb" + dtag, "edge_length",
                                 {{vl[s][arc], Rat(1)}, {ve[s][arc], Rat(-1)}},
                                 Relation::GreaterEq, Rat(-1) + yc - xc};
                if (yv >= 0) lo.terms.emplace_back(yv, Rat(-1));
                if (xv >= 0) lo.terms.emplace_back(xv, Rat(1));
                add_con(std::move(lo));
            }
        }
        int u = src.edge(s).u, v = src.edge(s).v;
        for (int n = 0; n < nd; ++n) {
            std::string ntag = tag + "_n" + std::to_string(n);
            IlpModel::Con demand{"demand" + ntag, "demand",
                                 {{vm[u][n], alpha}, {vr[s][n], Rat(-1)}},
                                 Relation::GreaterEq, Rat(0)};
            IlpModel::Con degree{"degree" + ntag, "degree",
                                 {{vm[u][n], Rat(-1)}, {vm[v][n], Rat(1)}},
                                 Relation::Equal, Rat(0)};
            for (int de : incident[n]) {
                int in = derived.edge(de).v == n ? 2 * de : 2 * de + 1;
                int out = in ^ 1;
                demand.terms.emplace_back(vf[s][in], Rat(1));
                demand.terms.emplace_back(vf[s][out], Rat(-1));
                degree.terms.emplace_back(ve[s][out], Rat(1));
                degree.terms.emplace_back(ve[s][in], Rat(-1));
            }
            add_con(std::move(demand));
            add_con(std::move(degree));
        }
        IlpModel::Con budget{"budget" + tag, "budget",
                             {{var_o, -src.edge(s).length}}, Relation::LessEq, Rat(0)};
        for (int de = 0; de < ed; ++de) {
            const Rat& blen = base.edge(sub.segment(de).base_edge).length;
            budget.terms.emplace_back(vl[s][2 * de], blen);
            budget.terms.emplace_back(vl[s][2 * de + 1], blen);
        }
        add_con(std::move(budget));
    }

    // Auxiliary order along each chain (pinned endpoints give no row).
    for (int f = 0; f < base.edge_count(); ++f) {
        const auto& chain = sub.chain(f);
        for (size_t j = 0; j + 1 < chain.size(); ++j) {
            auto [xv, xc] = pos(f, chain[j]);
            auto [yv, yc] = pos(f, chain[j + 1]);
            IlpModel::Con con{"order_f" + std::to_string(f) + "_" + std::to_string(j),
                              "aux_order", {}, Relation::GreaterEq, xc - yc};
            if (yv >= 0) con.terms.emplace_back(yv, Rat(1));
            if (xv >= 0) con.terms.emplace_back(xv, Rat(-1));
            if (!con.terms.empty()) add_con(std::move(con));
        }
    }

    for (int u = 0; u < src.vertex_count(); ++u) {
        IlpModel::Con con{"place_u" + std::to_string(u), "one_target", {}, Relation::Equal, Rat(1)};
        for (int n = 0; n < nd; ++n) con.terms.emplace_back(vm[u][n], Rat(1));
        add_con(std::move(con));
    }
    for (int de = 0; de < ed; ++de) {
        IlpModel::Con con{"cover_e" + std::to_string(de), "covered", {}, Relation::GreaterEq,
                          Rat(1)};
        for (int s = 0; s < src.edge_count(); ++s)
            for (int d = 0; d < 2; ++d) con.terms.emplace_back(ve[s][2 * de + d], Rat(1));
        add_con(std::move(con));
    }
    return m;
}

IlpModel build_model(const MetricGraph& src, const MetricGraph& dst, int c,
                     std::optional<Rat> alpha) {
    if (c < 0 || c > src.vertex_count())
        throw ParameterError("auxiliary count must lie in [0, |V(src)|]");
    Rat a = alpha.value_or(Rat(dst.edge_count()));
    if (a <= 0) throw ParameterError("scale bound must be positive");
    return build_model_over(src, subdivide(dst, static_cast<unsigned>(c) + 1), a);
}

namespace {

void write_term_list(std::ostringstream& out, const std::vector<std::pair<int, Rat>>& terms,
                     const IlpModel& m, const mpz_class& scale) {
    for (const auto& [v, c] : terms) {
        Rat sc = c * Rat(scale);
        std::string dec = *decimal_form(sc >= 0 ? sc : -sc);
        out << (sc < 0 ? " - " : " + ") << dec << " " << m.vars[v].name;
    }
}

} // namespace

std::string write_model(const IlpModel& m, IlpFormat format) {
    std::ostringstream out;
    if (format == IlpFormat::LpText) {
        out << "\\ folding-cover model\n";
        for (const auto& v : m.vars) {
            const char* k = v.kind == IlpModel::VarKind::Binary        ? "binary"
                            : v.kind == IlpModel::VarKind::UnitInterval ? "unit"
                                                                        : "nonneg";
            out << "\\ var " << v.name << " " << k << "\n";
        }
        out << "Minimize\n obj:";
        write_term_list(out, m.objective, m, 1);
        out << "\nSubject To\n";
        for (const auto& con : m.cons) {
            mpz_class scale = row_scale(con);
            if (scale != 1) out << "\\ scaled by " << scale.get_str() << "\n";
            out << " " << con.name << ":";
            write_term_list(out, con.terms, m, scale);
            Rat rhs = con.rhs * Rat(scale);
            out << " " << rel_text(con.rel) << " " << *decimal_form(rhs) << "\n";
        }
        out << "Bounds\n";
        for (const auto& v : m.vars)
            if (v.kind == IlpModel::VarKind::UnitInterval)
                out << " 0 <= " << v.name << " <= 1\n";
        out << "Binary\n";
        for (const auto& v : m.vars)
            if (v.kind == IlpModel::VarKind::Binary) out << " " << v.name << "\n";
        out << "End\n";
        return out.str();
    }

    // MPS: rows scaled to finite decimals; column-major coefficients.
    std::vector<mpz_class> scale(m.cons.size());
    for (size_t i = 0; i < m.cons.size(); ++i) {
        scale[i] = row_scale(m.cons[i]);
        if (scale[i] != 1)
            out << "* row " << m.cons[i].name << " scaled by " << scale[i].get_str() << "\n";
    }
    out << "NAME folding_cover\nROWS\n N obj\n";
    for (const auto& con : m.cons) {
        char r = con.rel == Relation::LessEq ? 'L' : con.rel == Relation::GreaterEq ? 'G' : 'E';
        out << " " << r << " " << con.name << "\n";
    }
    std::vector<std::vector<std::pair<std::string, Rat>>> cols(m.vars.size());
    for (const auto& [v, c] : m.objective) cols[v].emplace_back("obj", c);
    for (size_t i = 0; i < m.cons.size(); ++i)
        for (const auto& [v, c] : m.cons[i].terms)
            cols[v].emplace_back(m.cons[i].name, c * Rat(scale[i]));
    out << "COLUMNS\n";
    bool in_int = false;
    for (size_t v = 0; v < m.vars.size(); ++v) {
        bool is_int = m.vars[v].kind == IlpModel::VarKind::Binary;
        if (is_int != in_int) {
            out << " MARKER MK" << v << " 'MARKER' " << (is_int ? "'INTORG'" : "'INTEND'")
                << "\n";
            in_int = is_int;
        }
        for (const auto& [row, c] : cols[v])
            out << " " << m.vars[v].name << " " << row << " " << *decimal_form(c) << "\n";
    }
    if (in_int) out << " MARKER MKEND 'MARKER' 'INTEND'\n";
    out << "RHS\n";
    for (size_t i = 0; i < m.cons.size(); ++i) {
        Rat rhs = m.cons[i].rhs * Rat(scale[i]);
        if (rhs != 0) out << " rhs " << m.cons[i].name << " " << *decimal_form(rhs) << "\n";
    }
    out << "BOUNDS\n";
    for (const auto& v : m.vars) {
        if (v.kind == IlpModel::VarKind::Binary)
            out << " BV bnd " << v.name << "\n";
        else if (v.kind == IlpModel::VarKind::UnitInterval)
            out << " UP bnd " << v.name << " 1\n";
    }
    out << "ENDATA\n";
    return out.str();
}

namespace {

Rat parse_number(const std::string& tok) {
    auto dot = tok.find('.');
    if (dot == std::string::npos || tok.find('/') != std::string::npos) {
        auto r = parse_rational(tok);
        if (!r) throw std::runtime_error("malformed number " + tok);
        return *r;
    }
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    mpz_class den = 1;
    for (size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(digits.begin());
    Rat r(mpz_class(digits), den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

} // namespace

IlpModel parse_lp_text(const std::string& text) {
    IlpModel m;
    std::map<std::string, int> index;
    std::istringstream in(text);
    std::string line;
    enum { Head, Obj, Rows, Bnds, Bin } section = Head;
    mpz_class pending_scale = 1;
    auto var_of = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw std::runtime_error("undeclared variable " + name);
        return it->second;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '\\') {
            std::istringstream ls(line.substr(1));
            std::string w;
            ls >> w;
            if (w == "var") {
                std::string name, kind;
                ls >> name >> kind;
                IlpModel::VarKind k = kind == "binary" ? IlpModel::VarKind::Binary
                                      : kind == "unit" ? IlpModel::VarKind::UnitInterval
                                                       : IlpModel::VarKind::Nonneg;
                index[name] = static_cast<int>(m.vars.size());
                m.vars.push_back({name, k});
            } else if (w == "scaled") {
                std::string by, val;
                ls >> by >> val;
                pending_scale = mpz_class(val);
            }
            continue;
        }
        if (line == "Minimize") { section = Obj; continue; }
        if (line == "Subject To") { section = Rows; continue; }
        if (line == "Bounds") { section = Bnds; continue; }
        if (line == "Binary") { section = Bin; continue; }
        if (line == "End") break;
        if (section == Bnds || section == Bin) continue; // kinds came from the header
        std::istringstream ls(line);
        std::string label;
        ls >> label; // "obj:" or "<name>:"
        std::vector<std::pair<int, Rat>> terms;
        std::string tok;
        Relation rel = Relation::LessEq;
        Rat rhs;
        while (ls >> tok) {
            if (tok == "+" || tok == "-") {
                std::string coeff, var;
                ls >> coeff >> var;
                Rat c = parse_number(coeff);
                terms.emplace_back(var_of(var), tok == "-" ? Rat(-c) : c);
            } else if (tok == "<=" || tok == ">=" || tok == "=") {
                rel = tok == "<=" ? Relation::LessEq
                      : tok == ">=" ? Relation::GreaterEq
                                    : Relation::Equal;
                std::string val;
                ls >> val;
                rhs = parse_number(val);
            }
        }
        if (section == Obj) {
            m.objective = std::move(terms);
        } else {
            IlpModel::Con con;
            con.name = label.substr(0, label.size() - 1);
            Rat inv = Rat(1) / Rat(pending_scale);
            for (auto& [v, c] : terms) c *= inv;
            con.terms = std::move(terms);
            con.rel = rel;
            con.rhs = rhs * inv;
            m.cons.push_back(std::move(con));
            pending_scale = 1;
        }
    }
    return m;
}

SubstitutionReport check_certificate(const MetricGraph& src, const MetricGraph& dst,
                                     const FoldingMap& fm) {
    SubstitutionReport rep;
    std::optional<Skeleton> skel;
    try {
        skel = skeleton_from_certificate(src, dst, fm);
    } catch (const SkeletonError& e) {
        rep.violations.push_back(e.what());
        return rep;
    }
    const Skeleton& sk = *skel;
    Rat alpha = std::max(fm.scale, sk.scale_cap);
    IlpModel m = build_model_over(src, sk.sub, alpha);
    const Subdivision& sub = sk.sub;
    const MetricGraph& derived = sub.derived();

    std::map<std::string, int> index;
    for (size_t i = 0; i < m.vars.size(); ++i) index[m.vars[i].name] = static_cast<int>(i);
    std::vector<Rat> x(m.vars.size(), Rat(0));
    auto set = [&](const std::string& name, const Rat& v) { x[index.at(name)] = v; };

    set("o", fm.scale);
    for (int u = 0; u < src.vertex_count(); ++u) set(vname_m(u, sk.placement[u]), Rat(1));
    for (int n = sub.base().vertex_count(); n < derived.vertex_count(); ++n)
        set(vname_a(n), sub.vertex_point(n).offset);
    for (int s = 0; s < src.edge_count(); ++s) {
        const auto& arcs = sk.arcs[s];
        int total = static_cast<int>(arcs.size());
        for (int k = 0; k < total; ++k) {
            int arc = arcs[k];
            const auto& e = derived.edge(arc / 2);
            int from = arc % 2 == 0 ? e.u : e.v;
            int to = arc % 2 == 0 ? e.v : e.u;
            const auto& seg = sub.segment(arc / 2);
            set(vname_e(s, from, to), Rat(1));
            set(vname_l(s, from, to), seg.hi - seg.lo);
            set(vname_f(s, from, to), Rat(total - k));
            set(vname_r(s, from), Rat(1));
            set(vname_r(s, to), Rat(1));
        }
    }

    rep.objective = fm.scale;
    rep.ok = true;
    for (const auto& con : m.cons) {
        Rat lhs(0);
        for (const auto& [v, c] : con.terms) lhs += c * x[v];
        bool sat = con.rel == Relation::LessEq      ? lhs <= con.rhs
                   : con.rel == Relation::GreaterEq ? lhs >= con.rhs
                                                    : lhs == con.rhs;
        if (!sat) {
            rep.ok = false;
            rep.violations.push_back(con.name + ": " + format_rational(lhs) + " " +
                                     rel_text(con.rel) + " " + format_rational(con.rhs));
        }
    }
    return rep;
}

FoldingMap fold_from_solution(const std::string& text, const MetricGraph& src,
                              const MetricGraph& dst, int c) {
    Subdivision sub = subdivide(dst, static_cast<unsigned>(c) + 1);
    const MetricGraph& derived = sub.derived();
    std::map<std::string, Rat> vals;
    std::istringstream in(text);
    std::string name, val;
    while (in >> name >> val) vals[name] = parse_number(val);
    auto value = [&](const std::string& n) {
        auto it = vals.find(n);
        return it == vals.end() ? Rat(0) : it->second;
    };

    // Positions: pins 0/1 plus solved auxiliary values.
    auto point_of = [&](int n) -> Point {
        const Point& p = sub.vertex_point(n);
        if (p.is_vertex()) return p;
        Rat a = value(vname_a(n));
        const auto& e = dst.edge(p.edge);
        if (a == 0) return Point::at_vertex(e.u);
        if (a == 1) return Point::at_vertex(e.v);
        return Point::interior(p.edge, a);
    };

    FoldingMap fm;
    fm.scale = value("o");
    std::vector<int> place(src.vertex_count(), -1);
    for (int u = 0; u < src.vertex_count(); ++u) {
        for (int n = 0; n < derived.vertex_count(); ++n)
            if (value(vname_m(u, n)) == 1) place[u] = n;
        if (place[u] < 0) throw std::runtime_error("solution places no target for a vertex");
        fm.placement[u] = point_of(place[u]);
    }

    for (int s = 0; s < src.edge_count(); ++s) {
        // Multiset of chosen directed arcs; Hierholzer from the u placement.
        std::vector<std::vector<int>> out(derived.vertex_count());
        for (int de = 0; de < derived.edge_count(); ++de) {
            const auto& e = derived.edge(de);
            if (value(vname_e(s, e.u, e.v)) == 1) out[e.u].push_back(2 * de);
            if (value(vname_e(s, e.v, e.u)) == 1) out[e.v].push_back(2 * de + 1);
        }
        int start = place[src.edge(s).u];
        std::vector<int> stack{start}, trail;
        std::vector<std::vector<int>> rem = out;
        while (!stack.empty()) {
            int n = stack.back();
            if (rem[n].empty()) {
                trail.push_back(n);
                stack.pop_back();
            } else {
                int arc = rem[n].back();
                rem[n].pop_back();
                const auto& e = derived.edge(arc / 2);
                stack.push_back(arc % 2 == 0 ? e.v : e.u);
            }
        }
        std::reverse(trail.begin(), trail.end());
        for (const auto& r : rem)
            if (!r.empty()) throw std::runtime_error("solution edges do not form one trail");
        if (trail.back() != place[src.edge(s).v])
            throw std::runtime_error("solution trail ends at the wrong placement");
        Walk w{point_of(trail[0])};
        for (size_t i = 1; i < trail.size(); ++i) {
            Point next = point_of(trail[i]);
            if (w.back().is_vertex() && next.is_vertex() && !(w.back() == next)) {
                // Disambiguate parallel edges via the traversed segment.
                int de = -1;
                for (int cand = 0; cand < derived.edge_count(); ++cand) {
                    const auto& e = derived.edge(cand);
                    if ((e.u == trail[i - 1] && e.v == trail[i]) ||
                        (e.v == trail[i - 1] && e.u == trail[i]))
                        de = cand;
                }
                const auto& seg = sub.segment(de);
                w.push_back(Point::interior(seg.base_edge, (seg.lo + seg.hi) / 2));
            }
            if (!(w.back() == next)) w.push_back(next);
        }
        fm.routes[s] = std::move(w);
    }
    return fm;
}

} // namespace iso
