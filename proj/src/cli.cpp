#include "bz/cli.hpp"

#include "bz/errors.hpp"
#include "bz/family_sim.hpp"
#include "bz/fixed_vectors.hpp"
#include "bz/json_io.hpp"
#include "bz/matrix.hpp"
#include "bz/twist_detect.hpp"
#include "bz/weyl.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <set>

namespace bz {

namespace {

constexpr std::size_t kDefaultMaxNodes = 20000;

struct Options {
    std::string json_path, skeleton, traces, points, exponents, target = "e1", u = "q", q = "4", emit_traces;
    std::string lengths, oracle = "closed";
    int n = 1, d = 1, j = 1, dtau = 1, line = 0, length = 0, max_n = kDefaultSprimeGuard, psi_cond = 0;
    std::size_t max_nodes = kDefaultMaxNodes;
    std::uint64_t seed = 0;
    bool symbolic_v = false;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw DomainError("bad integer list '" + text + "'");
        Rational r = parse_rational(cur);
        if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw DomainError("bad integer list '" + text + "'");
        out.push_back(static_cast<int>(r.get_num().get_si()));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush(); else cur += c;
    }
    flush();
    return out;
}

LaurentScalar parse_u(const std::string& text) {
    if (text == "q") return LaurentScalar::var(kResidueVar, 2);
    if (text == "v") return LaurentScalar::var(kResidueVar);
    return LaurentScalar(parse_rational(text));
}

std::optional<Rational> q_option(const Options& o) {
    if (o.symbolic_v) return std::nullopt;
    return parse_rational(o.q);
}

Json cmd_sort(const Options& o) {
    auto ms = multisegment_from_json(read_json_file(o.json_path));
    Json order = Json::array();
    for (const auto& s : bz_sort(ms)) order.push_back(segment_to_json(s));
    return Json{{"order", order}};
}

Json cmd_poset(const Options& o) {
    auto ms = multisegment_from_json(read_json_file(o.json_path));
    Poset p = poset_below(ms, o.max_nodes);
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& n : p.nodes) nodes.push_back(multisegment_to_json(n)["segments"]);
    for (const auto& [a, b] : p.edges) edges.push_back(Json::array({a, b}));
    return Json{{"nodes", nodes}, {"edges", edges}};
}

Json cmd_k1(const Options& o) {
    auto ms = multisegment_from_json(read_json_file(o.json_path));
    Json out{{"valuation", k1_valuation(ms)}};
    bool unramified = true;
    for (const auto& s : ms.segments()) unramified &= s.label.deg == 1 && s.label.artin == 0;
    if (unramified) {
        LaurentScalar dim = k1_dimension(ms);
        out["dimension_poly"] = laurent_to_json(dim);
        out["dimension_text"] = dim.to_string();
    }
    return out;
}

Json cmd_jacquet(const Options& o) {
    auto lengths = parse_int_list(o.lengths);
    Json out = Json::array();
    for (const auto& s : jacquet_isotypic(lengths, o.j, o.dtau)) out.push_back(summand_to_json(s));
    return out;
}

Json cmd_detmat(const Options& o) {
    LaurentScalar u = parse_u(o.u);
    LaurentScalar det = mat_det(build_matrix_A(o.n, o.d, u));
    Integer closed = det_A_closed(o.n, o.d);
    return Json{{"det", closed.get_str()},
                {"computed_det", laurent_to_json(det)},
                {"computed_text", det.to_string()},
                {"u", u.to_string()},
                {"agrees", det == LaurentScalar(Rational(closed))}};
}

int pick_length(const TwistSkeleton& sk, int line, int requested) {
    if (requested > 0) return requested;
    if (line < 0 || line >= static_cast<int>(sk.lines.size())) throw DomainError("line out of range");
    std::set<int> lens;
    for (const auto& s : sk.lines[line].segments) lens.insert(s.len);
    if (lens.size() != 1) throw DomainError("line has several segment lengths; pass --length");
    return *lens.begin();
}

Json cmd_detect(const Options& o) {
    auto sk = skeleton_from_json(read_json_file(o.skeleton));
    auto table = traces_from_json(read_json_file(o.traces));
    auto target = SymmetricTarget::parse(o.target);
    int length = pick_length(sk, o.line, o.length);
    LaurentScalar value = detect_twists(table_oracle(table), sk, o.line, length, target);
    return Json{{"line", o.line},
                {"length", length},
                {"target", target.to_string()},
                {"value", laurent_to_json(value)},
                {"value_text", value.to_string()}};
}

ExponentPolicy read_policy(const Options& o) {
    if (o.exponents.empty()) return {};
    return policy_from_json(read_json_file(o.exponents));
}

Json cmd_epsilon(const Options& o) {
    auto sk = skeleton_from_json(read_json_file(o.skeleton));
    return epsilon_to_json(epsilon_family_polynomial(sk, o.psi_cond, read_policy(o)));
}

Json emit_traces(const SyntheticFamily& fam, const std::string& id, OracleImpl impl) {
    TraceTable t;
    if (!fam.symbolic_v()) t.q = fam.v.constant() * fam.v.constant();
    const auto& sk = fam.skeleton;
    for (int li = 0; li < static_cast<int>(sk.lines.size()); ++li) {
        const auto& line = sk.lines[li];
        const int n = line.n();
        for (int step = 1; step <= n; ++step) {
            const int d = line.cuspidal.twist_index * step;
            for (int j = 1; j <= n; ++j)
                t.traces.push_back({li, j, d, oracle_eval(fam, make_probe(sk, li, j, d), id, impl)});
        }
    }
    return traces_to_json(t);
}

int cmd_simulate(const Options& o, std::ostream& out) {
    SyntheticFamily fam;
    ExponentPolicy policy;
    std::int64_t psi_cond = o.psi_cond;
    if (!o.skeleton.empty()) {
        auto sk = skeleton_from_json(read_json_file(o.skeleton));
        std::string base = "x0";
        std::vector<FamilyPoint> points{{"x0", {}}};
        if (!o.points.empty()) points = points_from_json(read_json_file(o.points), base);
        fam = make_family(std::move(sk), std::move(points), base, q_option(o));
        policy = read_policy(o);
    } else {
        RandomFamily rf = random_family(o.seed);
        fam = std::move(rf.family);
        if (auto q = q_option(o)) {
            Rational root;
            if (*q <= 0 || !rational_sqrt(*q, root)) throw DomainError("q must be the square of a positive rational");
            fam.v = LaurentScalar(root);
        } else {
            fam.v = LaurentScalar::var(kResidueVar);
        }
        policy = rf.policy;
        psi_cond = rf.psi_cond;
    }
    OracleImpl impl = OracleImpl::ClosedForm;
    if (o.oracle == "enum") {
        impl = OracleImpl::Enumeration;
        for (const auto& l : fam.skeleton.lines)
            if (l.n() > o.max_n)
                throw GuardExceeded("line size " + std::to_string(l.n()) + " exceeds --max-n " + std::to_string(o.max_n));
    }
    if (!o.emit_traces.empty()) {
        Json j = emit_traces(fam, o.emit_traces, impl);
        j["skeleton"] = skeleton_to_json(fam.skeleton);
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    RecoveryReport rep = run_epsilon_recovery(fam, psi_cond, policy);
    Json rows = Json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"id", r.id},
                        {"recovered", r.recovered.to_string()},
                        {"direct", r.direct.to_string()},
                        {"match", r.match}});
    Json j{{"skeleton", skeleton_to_json(fam.skeleton)},
           {"psi_cond", psi_cond},
           {"family", epsilon_to_json(rep.family)},
           {"rows", rows},
           {"verification", rep.pass ? "PASS" : "FAIL"}};
    out << j.dump(2) << "\n";
    return rep.pass ? kExitOk : kExitDomain;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    if (const char* env = std::getenv("BZ_MAX_N")) {
        try {
            o.max_n = std::stoi(env);
        } catch (const std::exception&) {
            err << "BZ_MAX_N must be an integer\n";
            return kExitUsage;
        }
    }

    CLI::App app{"Multisegment and epsilon-factor calculator", "bz"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_json = [&](CLI::App* c) { c->add_option("--json", o.json_path, "multisegment JSON file")->required(); };
    auto* sort = app.add_subcommand("sort", "order segments so none precedes a later one");
    add_json(sort);
    auto* poset = app.add_subcommand("poset", "all multisegments below the input");
    add_json(poset);
    poset->add_option("--max-nodes", o.max_nodes, "node cap")->check(CLI::PositiveNumber);
    auto* k1 = app.add_subcommand("k1", "valuation and dimension of congruence-fixed vectors");
    add_json(k1);
    auto* jac = app.add_subcommand("jacquet", "isotypic pieces of the Jacquet module in one slot");
    jac->add_option("--lengths", o.lengths, "comma-separated segment lengths")->required();
    jac->add_option("--j", o.j, "slot")->required();
    jac->add_option("--dtau", o.dtau, "dimension of the type");
    auto* det = app.add_subcommand("detmat", "determinant of the recovery matrix A");
    det->add_option("--n", o.n)->required();
    det->add_option("--d", o.d)->required();
    det->add_option("--u", o.u, "rational, q (= v^2) or v");
    auto* detect = app.add_subcommand("detect", "evaluate a symmetric function of twists from traces");
    detect->add_option("--skeleton", o.skeleton)->required();
    detect->add_option("--traces", o.traces)->required();
    detect->add_option("--target", o.target, "e.g. e2, prod^2, 1/2*p1^2+e2");
    detect->add_option("--line", o.line);
    detect->add_option("--length", o.length, "segment length class (default: the line's only length)");
    auto* eps = app.add_subcommand("epsilon", "epsilon factor of the family as a monomial in twists");
    eps->add_option("--skeleton", o.skeleton)->required();
    eps->add_option("--psi-cond", o.psi_cond);
    eps->add_option("--exponents", o.exponents, "exponent policy JSON");
    auto* sim = app.add_subcommand("simulate", "recover epsilon ratios from traces and compare");
    auto* sk_opt = sim->add_option("--skeleton", o.skeleton);
    sim->add_option("--points", o.points)->needs(sk_opt);
    auto* seed_opt = sim->add_option("--seed", o.seed, "generate a random family");
    sk_opt->excludes(seed_opt);
    auto* q_opt = sim->add_option("--q", o.q, "residue cardinality, a rational square");
    sim->add_flag("--symbolic-v", o.symbolic_v, "keep v formal")->excludes(q_opt);
    sim->add_option("--psi-cond", o.psi_cond);
    sim->add_option("--exponents", o.exponents)->needs(sk_opt);
    sim->add_option("--emit-traces", o.emit_traces, "print the probe traces of one point instead");
    sim->add_option("--oracle", o.oracle)->check(CLI::IsMember({"closed", "enum"}));
    sim->add_option("--max-n", o.max_n, "enumeration guard");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run 'bz --help' for usage\n";
        return kExitUsage;
    }
    try {
        Json result;
        if (sort->parsed()) result = cmd_sort(o);
        else if (poset->parsed()) result = cmd_poset(o);
        else if (k1->parsed()) result = cmd_k1(o);
        else if (jac->parsed()) result = cmd_jacquet(o);
        else if (det->parsed()) result = cmd_detmat(o);
        else if (detect->parsed()) result = cmd_detect(o);
        else if (eps->parsed()) result = cmd_epsilon(o);
        else {
            if (o.skeleton.empty() && seed_opt->count() == 0) {
                err << "usage error: simulate needs --skeleton or --seed\n";
                return kExitUsage;
            }
            return cmd_simulate(o, out);
        }
        out << result.dump(2) << "\n";
        return kExitOk;
    } catch (const DomainError& e) {
        out << Json{{"error", e.what()}}.dump() << "\n";
        return kExitDomain;
    }
}

} // namespace bz
