#include "bz/json_io.hpp"

#include "bz/errors.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <sstream>

namespace bz {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw DomainError(std::string("expected a JSON object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw DomainError(std::string("missing field '") + key + "'");
    return *it;
}

Rational rational_of(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw DomainError("expected a rational as a decimal string, got " + j.dump());
}

long integer_of(const Json& j, const char* what) {
    Rational r;
    try {
        r = rational_of(j);
    } catch (const DomainError&) {
        throw DomainError(std::string("field '") + what + "' must be an integer");
    }
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw DomainError(std::string("field '") + what + "' must be a machine-size integer");
    return r.get_num().get_si();
}

int int_field(const Json& j, const char* key) { return static_cast<int>(integer_of(field(j, key), key)); }

template <class T>
T optional_field(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw DomainError(std::string("field '") + key + "' must be a boolean");
        return it->template get<bool>();
    } else {
        return static_cast<T>(integer_of(*it, key));
    }
}

} // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

Json laurent_to_json(const LaurentScalar& p) {
    // Terms in variable-name order so the output is independent of interning.
    std::vector<std::pair<std::map<std::string, std::int64_t>, Rational>> rows;
    for (const auto& [m, c] : p.terms()) rows.emplace_back(m.by_name(), c);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Json terms = Json::array();
    for (const auto& [exps, c] : rows) {
        Json e = Json::object();
        for (const auto& [name, x] : exps) e[name] = x;
        terms.push_back({{"exps", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    }
    return Json{{"terms", terms}};
}

LaurentScalar laurent_from_json(const Json& j) {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw DomainError("'terms' must be an array");
    LaurentScalar out;
    for (const auto& t : terms) {
        Monomial m;
        auto it = t.find("exps");
        if (it != t.end()) {
            if (!it->is_object()) throw DomainError("'exps' must be an object");
            for (auto e = it->begin(); e != it->end(); ++e) {
                if (!e.value().is_number_integer()) throw DomainError("exponents must be integers");
                m = m * Monomial::var(e.key(), e.value().get<std::int64_t>());
            }
        }
        Rational num = rational_of(field(t, "num"));
        Rational den = t.contains("den") ? rational_of(t["den"]) : Rational(1);
        if (num.get_den() != 1 || den.get_den() != 1) throw DomainError("num and den must be integers");
        if (den == 0) throw DomainError("zero denominator");
        out += LaurentScalar(m, num / den);
    }
    return out;
}

LaurentScalar scalar_from_json(const Json& j) {
    if (j.is_object()) return laurent_from_json(j);
    return LaurentScalar(rational_of(j));
}

Json label_to_json(const CuspidalLabel& c) {
    return Json{{"name", c.name},       {"deg", c.deg},
                {"twist_index", c.twist_index}, {"artin", c.artin},
                {"inertia_inv", c.inertia_inv}, {"unitary", c.unitary}};
}

CuspidalLabel label_from_json(const Json& j) {
    CuspidalLabel c;
    const Json& name = field(j, "name");
    if (!name.is_string()) throw DomainError("cuspidal name must be a string");
    c.name = name.get<std::string>();
    c.deg = optional_field<int>(j, "deg", 1);
    c.twist_index = optional_field<int>(j, "twist_index", 1);
    c.artin = optional_field<int>(j, "artin", 0);
    c.inertia_inv = optional_field<int>(j, "inertia_inv", (c.deg == 1 && c.artin == 0) ? 1 : 0);
    c.unitary = optional_field<bool>(j, "unitary", true);
    c.validate();
    return c;
}

Json segment_to_json(const Segment& s) {
    return Json{{"cuspidal", label_to_json(s.label)}, {"start2", s.start2}, {"len", s.len}};
}

Segment segment_from_json(const Json& j) {
    Segment s{label_from_json(field(j, "cuspidal")), int_field(j, "start2"), int_field(j, "len")};
    if (s.len < 1) throw DomainError("segment length must be positive");
    return s;
}

Json multisegment_to_json(const MultiSegment& s) {
    Json segs = Json::array();
    for (const auto& seg : s.segments()) segs.push_back(segment_to_json(seg));
    return Json{{"segments", segs}};
}

MultiSegment multisegment_from_json(const Json& j) {
    const Json& segs = field(j, "segments");
    if (!segs.is_array()) throw DomainError("'segments' must be an array");
    std::vector<Segment> out;
    for (const auto& s : segs) out.push_back(segment_from_json(s));
    return MultiSegment(std::move(out));
}

Json skeleton_to_json(const TwistSkeleton& sk) {
    Json lines = Json::array();
    for (const auto& line : sk.lines) {
        Json segs = Json::array();
        for (const auto& s : line.segments) {
            Json w = s.w.is_constant() ? Json(s.w.constant().get_str()) : laurent_to_json(s.w);
            segs.push_back({{"len", s.len}, {"start2", s.start2}, {"w", w}, {"var", s.var}});
        }
        lines.push_back({{"cuspidal", label_to_json(line.cuspidal)},
                         {"a", line.a.get_str()},
                         {"d_tau", line.d_tau},
                         {"segments", segs}});
    }
    return Json{{"lines", lines}};
}

TwistSkeleton skeleton_from_json(const Json& j) {
    const Json& lines = field(j, "lines");
    if (!lines.is_array()) throw DomainError("'lines' must be an array");
    TwistSkeleton sk;
    for (const auto& l : lines) {
        SkeletonLine line;
        line.cuspidal = label_from_json(field(l, "cuspidal"));
        if (l.contains("a")) line.a = rational_of(l["a"]);
        line.d_tau = optional_field<int>(l, "d_tau", 1);
        const Json& segs = field(l, "segments");
        if (!segs.is_array()) throw DomainError("'segments' must be an array");
        for (const auto& s : segs) {
            SkeletonSegment seg;
            seg.len = int_field(s, "len");
            seg.start2 = optional_field<int>(s, "start2", 0);
            if (s.contains("w")) seg.w = scalar_from_json(s["w"]);
            if (s.contains("var")) {
                if (!s["var"].is_string()) throw DomainError("'var' must be a string");
                seg.var = s["var"].get<std::string>();
            }
            line.segments.push_back(std::move(seg));
        }
        sk.lines.push_back(std::move(line));
    }
    sk.validate_and_name();
    return sk;
}

std::vector<FamilyPoint> points_from_json(const Json& j, std::string& base_point) {
    const Json& base = field(j, "base_point");
    if (!base.is_string()) throw DomainError("'base_point' must be a string");
    base_point = base.get<std::string>();
    const Json& pts = field(j, "points");
    if (!pts.is_array()) throw DomainError("'points' must be an array");
    std::vector<FamilyPoint> out;
    for (const auto& p : pts) {
        FamilyPoint fp;
        const Json& id = field(p, "id");
        if (!id.is_string()) throw DomainError("point id must be a string");
        fp.id = id.get<std::string>();
        if (p.contains("z")) {
            if (!p["z"].is_object()) throw DomainError("'z' must be an object");
            for (auto it = p["z"].begin(); it != p["z"].end(); ++it) fp.z[it.key()] = rational_of(it.value());
        }
        out.push_back(std::move(fp));
    }
    return out;
}

ExponentPolicy policy_from_json(const Json& j) {
    const Json& entries = j.is_array() ? j : field(j, "exponents");
    if (!entries.is_array()) throw DomainError("exponent policy must be an array");
    ExponentPolicy pol;
    for (const auto& e : entries) {
        int line = int_field(e, "line");
        long exponent = integer_of(field(e, "exponent"), "exponent");
        if (e.contains("segment"))
            pol.by_segment[{line, int_field(e, "segment")}] = exponent;
        else if (e.contains("length"))
            pol.by_length[{line, int_field(e, "length")}] = exponent;
        else
            throw DomainError("exponent entry needs 'segment' or 'length'");
    }
    return pol;
}

Json epsilon_to_json(const EpsilonFactor& e) {
    Json bases = Json::array();
    for (const auto& b : e.bases)
        bases.push_back({{"label", b.label}, {"m", b.m}, {"s", b.s_tag}, {"psi", b.psi_tag}});
    return Json{{"bases", bases}, {"coeff", laurent_to_json(e.coeff)}, {"coeff_text", e.coeff.to_string()}};
}

Json summand_to_json(const IsotypicSummand& s) {
    return Json{{"i", s.line_index},
                {"k", s.k},
                {"multiplicity", s.multiplicity.get_str()},
                {"q_exp2", s.q_exp2},
                {"twist_var", s.twist_var}};
}

Json traces_to_json(const TraceTable& t) {
    Json out = Json::object();
    if (t.q) out["q"] = t.q->get_str();
    Json arr = Json::array();
    for (const auto& e : t.traces)
        arr.push_back({{"line", e.line}, {"j", e.j}, {"d", e.d}, {"value", laurent_to_json(e.value)}});
    out["traces"] = arr;
    return out;
}

TraceTable traces_from_json(const Json& j) {
    TraceTable t;
    if (j.contains("q")) t.q = rational_of(j["q"]);
    const Json& arr = field(j, "traces");
    if (!arr.is_array()) throw DomainError("'traces' must be an array");
    for (const auto& e : arr)
        t.traces.push_back({int_field(e, "line"), int_field(e, "j"), int_field(e, "d"), scalar_from_json(field(e, "value"))});
    return t;
}

TraceOracle table_oracle(const TraceTable& t) {
    std::map<std::tuple<int, int, int>, LaurentScalar> table;
    for (const auto& e : t.traces) table[{e.line, e.j, e.d}] = e.value;
    LaurentScalar v = LaurentScalar::var(kResidueVar);
    if (t.q) {
        Rational root;
        if (*t.q <= 0 || !rational_sqrt(*t.q, root)) throw DomainError("q must be the square of a positive rational");
        v = LaurentScalar(root);
    }
    return {[table](const ProbeDescriptor& p) {
                auto it = table.find({p.line, p.j, p.d});
                if (it == table.end())
                    throw DomainError("no trace for probe line " + std::to_string(p.line) + " j " +
                                      std::to_string(p.j) + " d " + std::to_string(p.d));
                return it->second;
            },
            v};
}

} // namespace bz
