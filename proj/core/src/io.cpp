#include "polyimage/io.hpp"

#include "polyimage/constructions.hpp"
#include "polyimage/trimming.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace polyimage {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

struct LineReader {
    std::istringstream is;
    explicit LineReader(const std::string& text) : is(text) {}
    std::string next() {
        std::string line;
        while (std::getline(is, line)) {
            if (!line.empty() && line[0] != '#') return line;
        }
        throw ParseError("unexpected end of document");
    }
    bool eof() {
        return is.peek() == EOF;
    }
};

std::string expect_kw(const std::string& line, const std::string& kw) {
    if (line.rfind(kw, 0) != 0)
        throw ParseError("expected '" + kw + "', got: " + line);
    std::string rest = line.substr(kw.size());
    if (!rest.empty() && rest[0] == ' ') rest = rest.substr(1);
    return rest;
}

}  // namespace

std::string write_poly(const MPoly& p) {
    std::ostringstream os;
    os << "poly " << p.nvars() << ' ' << p.term_count();
    for (const auto& [e, c] : p.terms()) {
        for (unsigned k : e) os << ' ' << k;
        os << ' ' << rat_str(c);
    }
    return os.str();
}

MPoly parse_poly(const std::string& line) {
    auto ts = tokens(line);
    if (ts.size() < 3 || ts[0] != "poly") throw ParseError("bad polynomial line: " + line);
    std::size_t nvars = std::stoul(ts[1]);
    std::size_t nterms = std::stoul(ts[2]);
    if (ts.size() != 3 + nterms * (nvars + 1))
        throw ParseError("polynomial token count mismatch: " + line);
    MPoly p(nvars);
    std::size_t pos = 3;
    for (std::size_t t = 0; t < nterms; ++t) {
        Exponents e(nvars);
        for (std::size_t i = 0; i < nvars; ++i) e[i] = std::stoul(ts[pos++]);
        p.add_term(e, rat_parse(ts[pos++]));
    }
    return p;
}

std::string write_polyhedron(const Polyhedron& K) {
    std::ostringstream os;
    os << "polyhedron\n";
    os << "dim " << K.ambient_dim() << '\n';
    if (!K.name().empty()) os << "name " << K.name() << '\n';
    for (const auto& h : K.halfspaces()) {
        os << "halfspace";
        for (const auto& c : h.coeffs) os << ' ' << rat_str(c);
        os << '\n';
    }
    os << "end\n";
    return os.str();
}

namespace {

Polyhedron parse_polyhedron_body(LineReader& r) {
    std::size_t n = std::stoul(expect_kw(r.next(), "dim"));
    std::string name;
    std::vector<HalfSpace> hs;
    for (;;) {
        std::string line = r.next();
        if (line == "end") break;
        if (line.rfind("name", 0) == 0) {
            name = expect_kw(line, "name");
            continue;
        }
        auto ts = tokens(expect_kw(line, "halfspace"));
        if (ts.size() != n + 1) throw ParseError("halfspace needs n+1 coefficients");
        HalfSpace h;
        for (const auto& t : ts) h.coeffs.push_back(rat_parse(t));
        hs.push_back(std::move(h));
    }
    return Polyhedron(n, std::move(hs), name);
}

}  // namespace

Polyhedron parse_polyhedron(const std::string& text) {
    LineReader r(text);
    expect_kw(r.next(), "polyhedron");
    return parse_polyhedron_body(r);
}

namespace {

void write_affine(std::ostringstream& os, const AffineMap& T) {
    os << "affine " << T.dim_out() << ' ' << T.dim_in() << '\n';
    for (std::size_t i = 0; i < T.dim_out(); ++i) {
        os << "row";
        for (std::size_t j = 0; j < T.dim_in(); ++j) os << ' ' << rat_str(T.linear().at(i, j));
        os << ' ' << rat_str(T.translation()[i]) << '\n';
    }
}

AffineMap parse_affine(LineReader& r, const std::string& head) {
    auto ts = tokens(head);
    std::size_t rows = std::stoul(ts[1]), cols = std::stoul(ts[2]);
    RatMat M(rows, cols);
    RatVec t(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        auto rt = tokens(expect_kw(r.next(), "row"));
        if (rt.size() != cols + 1) throw ParseError("affine row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) M.at(i, j) = rat_parse(rt[j]);
        t[i] = rat_parse(rt[cols]);
    }
    return AffineMap(M, t);
}

void write_stage(std::ostringstream& os, const Stage& s) {
    os << "stage " << stage_kind_name(s.kind) << ' ' << s.in_dim << ' ' << s.out_dim << '\n';
    switch (s.kind) {
        case StageKind::Affine:
            write_affine(os, *s.affine);
            break;
        case StageKind::Trim1:
            os << "P " << write_poly(*s.P) << '\n';
            os << "Q " << write_poly(*s.Q) << '\n';
            break;
        case StageKind::Trim2Poly:
        case StageKind::Trim2Reg:
            os << "P " << write_poly(*s.P) << '\n';
            os << "M " << rat_str(*s.M) << '\n';
            break;
        case StageKind::PresemialF1:
        case StageKind::PresemialF2:
            os << "g " << write_poly(s.presemial_g->truncated(s.in_dim - 1)) << '\n';
            break;
        case StageKind::Radial: {
            Exponents ea(s.in_dim, 0), eb(s.in_dim, 0), ec(s.in_dim, 0);
            ea[0] = 1;
            ea[1] = 4;
            eb[0] = 1;
            eb[1] = 2;
            ec[0] = 1;
            const MPoly& c0 = s.components[0].num();
            os << "abc " << rat_str(c0.coeff(ea)) << ' ' << rat_str(c0.coeff(eb)) << ' '
               << rat_str(c0.coeff(ec)) << '\n';
            break;
        }
        case StageKind::Square1: {
            Exponents e2(s.in_dim, 0);
            e2[0] = 2;
            os << "sign " << (s.components[0].num().coeff(e2) > 0 ? 1 : -1) << '\n';
            break;
        }
        case StageKind::Base2D:
            os << "key " << (s.base_key.empty() ? "-" : s.base_key) << '\n';
            for (const auto& c : s.components) {
                os << "num " << write_poly(c.num()) << '\n';
                os << "den " << rat_str(c.den().constant_value()) << '\n';
            }
            break;
        case StageKind::F0Lift:
        case StageKind::HalfplaneG2:
        case StageKind::ScaleCollapse:
            break;
    }
    // shared trim bookkeeping
    if (s.axis) os << "axis " << *s.axis << '\n';
    if (s.cut_axis) os << "cut " << *s.cut_axis << '\n';
    if (s.trim_source) {
        os << "source\n";
        os << write_polyhedron(*s.trim_source);
    }
    os << "endstage\n";
}

Stage parse_stage(LineReader& r, const std::string& head) {
    auto ts = tokens(head);
    if (ts.size() != 4) throw ParseError("bad stage header: " + head);
    auto kind = stage_kind_from_name(ts[1]);
    if (!kind) throw ParseError("unknown stage kind: " + ts[1]);
    std::size_t in_dim = std::stoul(ts[2]);
    std::size_t out_dim = std::stoul(ts[3]);

    std::optional<AffineMap> affine;
    std::optional<MPoly> P, Q, g;
    std::optional<Rat> M;
    std::optional<std::size_t> axis, cut;
    std::optional<Polyhedron> source;
    struct {
        std::optional<Rat> a, b, c;
    } radial;
    int square_sign = 1;
    std::string base_key;
    std::vector<std::pair<MPoly, Rat>> base_comps;

    for (;;) {
        std::string line = r.next();
        if (line == "endstage") break;
        if (line.rfind("affine", 0) == 0) {
            affine = parse_affine(r, line);
        } else if (line.rfind("P ", 0) == 0) {
            P = parse_poly(line.substr(2));
        } else if (line.rfind("Q ", 0) == 0) {
            Q = parse_poly(line.substr(2));
        } else if (line.rfind("M ", 0) == 0) {
            M = rat_parse(line.substr(2));
        } else if (line.rfind("g ", 0) == 0) {
            g = parse_poly(line.substr(2));
        } else if (line.rfind("abc", 0) == 0) {
            auto rt = tokens(expect_kw(line, "abc"));
            radial.a = rat_parse(rt[0]);
            radial.b = rat_parse(rt[1]);
            radial.c = rat_parse(rt[2]);
        } else if (line.rfind("sign", 0) == 0) {
            square_sign = std::stoi(expect_kw(line, "sign"));
        } else if (line.rfind("key", 0) == 0) {
            base_key = expect_kw(line, "key");
            if (base_key == "-") base_key.clear();
        } else if (line.rfind("num ", 0) == 0) {
            base_comps.emplace_back(parse_poly(line.substr(4)), Rat(1));
        } else if (line.rfind("den ", 0) == 0) {
            if (base_comps.empty()) throw ParseError("den before num in base2d stage");
            base_comps.back().second = rat_parse(line.substr(4));
        } else if (line.rfind("axis", 0) == 0) {
            axis = std::stoul(expect_kw(line, "axis"));
        } else if (line.rfind("cut", 0) == 0) {
            cut = std::stoul(expect_kw(line, "cut"));
        } else if (line == "source") {
            expect_kw(r.next(), "polyhedron");
            source = parse_polyhedron_body(r);
        } else {
            throw ParseError("unexpected stage line: " + line);
        }
    }

    Stage s;
    switch (*kind) {
        case StageKind::Affine:
            if (!affine) throw ParseError("affine stage without matrix");
            s = make_affine_stage(*affine);
            break;
        case StageKind::Trim1: {
            if (!P || !Q) throw ParseError("trim1 stage needs P and Q");
            ChosenQ cq;
            cq.Q = *Q;
            cq.M = Q->is_constant() ? Q->constant_value() : Rat(0);
            cq.cert = Q->is_constant() ? DenCert::make_constant(Q->constant_value())
                                       : DenCert::make_coeff_positive();
            s = make_trim1(*P, cq);
            break;
        }
        case StageKind::Trim2Poly:
            if (!P || !M) throw ParseError("trim2 stage needs P and M");
            s = make_trim2(*P, *M, Trim2Variant::Poly);
            break;
        case StageKind::Trim2Reg:
            if (!P || !M) throw ParseError("trim2 stage needs P and M");
            s = make_trim2(*P, *M, Trim2Variant::Reg);
            break;
        case StageKind::PresemialF1:
            if (!g) throw ParseError("presemial stage needs g");
            s = presemial_stage(*g, false, in_dim - 1);
            break;
        case StageKind::PresemialF2:
            if (!g) throw ParseError("presemial stage needs g");
            s = presemial_stage(*g, true, in_dim - 1);
            break;
        case StageKind::F0Lift:
            s = make_f0_lift_stage(in_dim - 1);
            break;
        case StageKind::Radial:
            if (!radial.a) throw ParseError("radial stage needs coefficients");
            s = make_radial_stage(in_dim, *radial.a, *radial.b, *radial.c);
            break;
        case StageKind::HalfplaneG2:
            s = make_halfplane_g2_stage(in_dim);
            break;
        case StageKind::ScaleCollapse:
            s = make_scale_collapse_stage(out_dim);
            break;
        case StageKind::Square1:
            s = make_square1_stage(in_dim, square_sign);
            break;
        case StageKind::Base2D: {
            std::vector<RatFn> comps;
            for (auto& [num, den] : base_comps)
                comps.push_back(RatFn(num, MPoly::constant(2, den), DenCert::make_constant(den)));
            s = make_base2d_stage(std::move(comps), base_key);
            break;
        }
    }
    if (s.in_dim != in_dim || s.out_dim != out_dim)
        throw ParseError("stage dimension mismatch on reload");
    if (axis) s.axis = axis;
    if (cut) s.cut_axis = cut;
    if (source) s.trim_source = source;
    return s;
}

void write_target(std::ostringstream& os, const TargetSet& t) {
    switch (t.kind) {
        case TargetSet::Kind::Complement:
            os << "target complement\n" << write_polyhedron(t.K);
            break;
        case TargetSet::Kind::InteriorComplement:
            os << "target interior-complement\n" << write_polyhedron(t.K);
            break;
        case TargetSet::Kind::OpenBallComplement:
            os << "target open-ball-complement " << t.dim << '\n';
            break;
        case TargetSet::Kind::ClosedBallComplement:
            os << "target closed-ball-complement " << t.dim << '\n';
            break;
        case TargetSet::Kind::LowerDimComplement:
            os << "target lower-dim-complement " << t.dim << ' ' << t.slice_ineqs.size()
               << '\n';
            write_affine(os, *t.placement);
            for (const auto& [g, strict] : t.slice_ineqs)
                os << "ineq " << (strict ? 1 : 0) << ' ' << write_poly(g) << '\n';
            break;
    }
}

TargetSet parse_target(LineReader& r, const std::string& head) {
    auto ts = tokens(head);
    const std::string& kind = ts[1];
    if (kind == "complement" || kind == "interior-complement") {
        expect_kw(r.next(), "polyhedron");
        Polyhedron K = parse_polyhedron_body(r);
        return kind == "complement" ? TargetSet::complement(K)
                                    : TargetSet::interior_complement(K);
    }
    if (kind == "open-ball-complement")
        return TargetSet::open_ball_complement(std::stoul(ts[2]));
    if (kind == "closed-ball-complement")
        return TargetSet::closed_ball_complement(std::stoul(ts[2]));
    if (kind == "lower-dim-complement") {
        std::size_t dim = std::stoul(ts[2]);
        std::size_t count = std::stoul(ts[3]);
        AffineMap placement = parse_affine(r, r.next());
        std::vector<std::pair<MPoly, bool>> ineqs;
        for (std::size_t i = 0; i < count; ++i) {
            auto it = tokens(r.next());
            if (it.size() < 2 || it[0] != "ineq") throw ParseError("bad ineq line");
            bool strict = it[1] == "1";
            std::string rest;
            for (std::size_t k = 2; k < it.size(); ++k) {
                if (k > 2) rest += ' ';
                rest += it[k];
            }
            ineqs.emplace_back(parse_poly(rest), strict);
        }
        return TargetSet::lower_dim_complement(dim, placement, ineqs);
    }
    throw ParseError("unknown target kind: " + kind);
}

}  // namespace

std::string write_chain(const MapChain& chain) {
    std::ostringstream os;
    os << "polyimage-chain 1\n";
    os << "in_dim " << chain.in_dim << '\n';
    os << "out_dim " << chain.out_dim << '\n';
    os << "regularity " << (chain.is_polynomial() ? "polynomial" : "regular") << '\n';
    write_target(os, chain.target);
    os << "stages " << chain.stages.size() << '\n';
    for (const auto& s : chain.stages) write_stage(os, s);
    return os.str();
}

MapChain parse_chain(const std::string& text) {
    LineReader r(text);
    expect_kw(r.next(), "polyimage-chain");
    std::size_t in_dim = std::stoul(expect_kw(r.next(), "in_dim"));
    std::size_t out_dim = std::stoul(expect_kw(r.next(), "out_dim"));
    expect_kw(r.next(), "regularity");  // recomputed from stages
    TargetSet target = parse_target(r, r.next());
    std::size_t count = std::stoul(expect_kw(r.next(), "stages"));
    MapChain chain;
    chain.target = target;
    for (std::size_t i = 0; i < count; ++i) chain.push(parse_stage(r, r.next()));
    if (count == 0) {
        chain.in_dim = in_dim;
        chain.out_dim = out_dim;
    }
    if (chain.in_dim != in_dim || chain.out_dim != out_dim)
        throw ParseError("chain dimension mismatch on reload");
    return chain;
}

std::string write_basemap(const BaseMapEntry& entry) {
    std::ostringstream os;
    os << "polyimage-basemap 1\n";
    switch (entry.key.kind) {
        case BaseMapKey::Kind::ClosedQuadrantComplement:
            os << "key closed-quadrant-complement\n";
            break;
        case BaseMapKey::Kind::OpenQuadrantComplement:
            os << "key open-quadrant-complement\n";
            break;
        case BaseMapKey::Kind::PolygonComplement:
            os << "key unbounded-polygon-complement\n";
            break;
        case BaseMapKey::Kind::PolygonInteriorComplement:
            os << "key unbounded-polygon-interior-complement\n";
            break;
    }
    os << "polygon " << (entry.key.polygon.empty() ? "-" : entry.key.polygon) << '\n';
    os << "provenance " << (entry.provenance.empty() ? "-" : entry.provenance) << '\n';
    os << write_chain(entry.chain);
    return os.str();
}

BaseMapEntry parse_basemap(const std::string& text) {
    LineReader r(text);
    expect_kw(r.next(), "polyimage-basemap");
    std::string key = expect_kw(r.next(), "key");
    std::string polygon = expect_kw(r.next(), "polygon");
    if (polygon == "-") polygon.clear();
    std::string provenance = expect_kw(r.next(), "provenance");
    if (provenance == "-") provenance.clear();
    std::ostringstream rest;
    std::string line;
    while (std::getline(r.is, line)) rest << line << '\n';
    BaseMapEntry entry;
    entry.key = parse_base_key(key, polygon);
    entry.provenance = provenance;
    entry.chain = parse_chain(rest.str());
    entry.validated = false;
    return entry;
}

std::string report_text(const VerifyReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << " tested=" << c.tested
           << " failures=" << c.failures;
        if (!c.note.empty()) os << " note=" << c.note;
        os << '\n';
        for (const auto& w : c.witnesses) os << "  witness: " << w << '\n';
    }
    os << (rep.pass() ? "RESULT PASS" : "RESULT FAIL") << '\n';
    return os.str();
}

std::string report_json(const VerifyReport& rep) {
    nlohmann::ordered_json j;
    j["pass"] = rep.pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["tested"] = c.tested;
        jc["failures"] = c.failures;
        jc["witnesses"] = c.witnesses;
        if (!c.note.empty()) jc["note"] = c.note;
        j["checks"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write file: " + path);
    f << content;
}

}  // namespace polyimage
