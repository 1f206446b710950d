#include "arakelov/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "arakelov/catalog.hpp"
#include "arakelov/errors.hpp"
#include "arakelov/existence.hpp"
#include "arakelov/lattice.hpp"
#include "arakelov/record.hpp"

namespace arakelov {

using nlohmann::json;

namespace {

mpq_class parse_bound(const std::string& s)
{
    try {
        mpq_class q(s, 10);
        q.canonicalize();
        if (sgn(q) < 0)
            throw SpecError("theta bound must be non-negative");
        return q;
    } catch (const std::invalid_argument&) {
        throw SpecError("bad theta bound '" + s + "'");
    }
}

mpfr_prec_t embed_bits(const CLI::Option* opt, const std::string& value)
{
    std::string s = value;
    if (s.empty()) {
        const char* env = std::getenv("ARAKELOV_PRECISION_BITS");
        s = env && *env ? env : "128";
    }
    long bits = 0;
    try {
        std::size_t used = 0;
        bits = std::stol(s, &used);
        if (used != s.size())
            bits = 0;
    } catch (const std::exception&) {
        bits = 0;
    }
    if (bits < 16 || bits > 1 << 20)
        throw SpecError("bad embedding precision '" + s + "' for " + opt->get_name());
    return static_cast<mpfr_prec_t>(bits);
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SpecError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string exclusion_rule(const Field& f, long level, bool trace_type)
{
    if (!check_level_bound(f, level))
        return f->degree() % 2 ? "odd degree level bound" : "level bound";
    const auto v = classify(f, trace_type, {false, false});
    return v.admits(level) ? "" : v.rule;
}

int cmd_exists(const std::string& spec, bool trace_type, const std::optional<long>& level, std::ostream& out)
{
    const Field f = NumberField::parse(spec);
    const auto v = classify(f, trace_type);
    json j = verdict_to_json(v);
    bool ok = !v.levels.empty();
    if (level) {
        ok = v.admits(*level);
        j["query"] = json{{"admitted", ok}, {"level", *level}};
        if (!ok)
            j["query"]["rule"] = exclusion_rule(f, *level, trace_type);
    }
    write_json(out, j);
    return ok ? exit_ok : exit_nonexistence;
}

struct ConstructArgs {
    std::string field;
    long level = 0;
    bool trace_type = false;
    std::string out_path;
    bool no_min = false;
    std::string theta;
    const CLI::Option* embed = nullptr;
    std::string embed_value;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err)
{
    const Field f = NumberField::parse(a.field);
    const std::optional<mpq_class> theta = a.theta.empty() ? std::nullopt : std::optional(parse_bound(a.theta));
    const mpfr_prec_t bits = a.embed->count() ? embed_bits(a.embed, a.embed_value) : 0;
    if (const std::string rule = exclusion_rule(f, a.level, a.trace_type); !rule.empty()) {
        write_json(out, json{{"field", f->spec()}, {"level", a.level}, {"rule", rule}, {"trace_type", a.trace_type}});
        err << "no lattice of level " << a.level << " over " << f->spec() << " (" << rule << ")\n";
        return exit_nonexistence;
    }
    const auto v = classify(f, a.trace_type, {true, false});
    const ConstructionWitness& w = *v.witnesses.at(a.level);
    const IdealLattice lat = build_lattice(realize(w.ideal, f), w.alpha);
    const LatticeReport r = verify_modularity(lat, w, {!a.no_min, theta});
    LatticeRecord rec = make_record(lat, w, r, theta, v.trace_type, v.rule);
    if (bits)
        rec.embedding = to_numeric(generator_matrix(lat, bits));
    const std::string text = emit_record(rec);
    if (a.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(a.out_path, std::ios::binary);
        if (!(file << text))
            throw SpecError("cannot write " + a.out_path);
    }
    return exit_ok;
}

/* Compare what the record claims with what was recomputed. */
std::vector<std::string> mismatches(const LatticeRecord& rec, const IdealLattice& lat, const LatticeReport& r,
                                    const std::optional<mpq_class>& theta)
{
    std::vector<std::string> m;
    if (rec.gram && !(*rec.gram == lat.gram))
        m.push_back("gram");
    if (!rec.report)
        return m;
    const LatticeReport& c = *rec.report;
    if (c.dimension != r.dimension)
        m.push_back("dimension");
    if (c.determinant != r.determinant)
        m.push_back("determinant");
    if (c.integral != r.integral)
        m.push_back("integral");
    if (c.even != r.even)
        m.push_back("even");
    if (c.level && *c.level != rec.level)
        m.push_back("level");
    if (c.minimum && r.minimum &&
        (c.minimum->minimum != r.minimum->minimum || c.minimum->kissing != r.minimum->kissing))
        m.push_back("minimum");
    if (theta && rec.theta_bound && !c.theta.empty()) {
        const mpq_class b = std::min(*theta, *rec.theta_bound);
        auto cut = [&](const std::vector<ThetaTerm>& t) {
            std::vector<std::pair<mpq_class, std::uint64_t>> out;
            for (const auto& [norm, count] : t)
                if (norm <= b)
                    out.emplace_back(norm, count);
            return out;
        };
        if (cut(c.theta) != cut(r.theta))
            m.push_back("theta");
    }
    if (rec.embedding) {
        const auto fresh = to_numeric(generator_matrix(lat, rec.embedding->precision));
        if (!(fresh == *rec.embedding))
            m.push_back("embedding");
    }
    return m;
}

int cmd_verify(const std::string& path, bool with_min, const std::string& theta_text, std::ostream& out,
               std::ostream& err)
{
    const LatticeRecord rec = parse_record(read_file(path));
    const std::optional<mpq_class> theta = theta_text.empty() ? std::nullopt : std::optional(parse_bound(theta_text));
    const Field f = NumberField::parse(rec.field);
    if (rec.alpha.size() != f->degree() || rec.beta.size() != f->degree())
        throw SpecError("record: alpha and beta need " + std::to_string(f->degree()) + " coefficients");
    const FieldElement alpha(f, rec.alpha);
    const ConstructionWitness w{rec.level, FieldElement(f, rec.beta), alpha, rec.ideal};
    json j{{"field", f->spec()}, {"ideal", rec.ideal.format()}, {"level", rec.level}};
    try {
        const IdealLattice lat = build_lattice(realize(rec.ideal, f), alpha);
        const LatticeReport r = verify_modularity(lat, w, {with_min, theta});
        const auto m = mismatches(rec, lat, r, theta);
        j["mismatches"] = m;
        j["report"] = report_to_json(r);
        j["verified"] = m.empty();
        write_json(out, j);
        if (!m.empty()) {
            err << "record disagrees with recomputation:";
            for (const auto& s : m)
                err << " " << s;
            err << "\n";
            return exit_verification;
        }
        return exit_ok;
    } catch (const ModularityFailure& e) {
        j["clause"] = e.clause();
        j["error"] = e.what();
        j["verified"] = false;
        write_json(out, j);
        err << e.what() << "\n";
        return exit_verification;
    } catch (const FormError& e) {
        j["error"] = e.what();
        j["verified"] = false;
        write_json(out, j);
        err << e.what() << "\n";
        return exit_verification;
    }
}

int cmd_catalog(bool table, std::ostream& out, std::ostream& err)
{
    const json rows = run_catalog(table ? published_table() : published_examples());
    write_json(out, rows);
    std::vector<std::string> failed;
    for (const auto& r : rows)
        if (!r["pass"].get<bool>())
            failed.push_back(std::to_string(r["row"].get<std::size_t>()) + " (" + r["name"].get<std::string>() + ")");
    if (failed.empty())
        return exit_ok;
    err << "failed rows:";
    for (const auto& s : failed)
        err << " " << s;
    err << "\n";
    return exit_verification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Arakelov-modular ideal lattices: existence, construction, verification"};
    app.name("arakelov");
    app.require_subcommand(1);

    std::string field;
    bool trace_type = false;
    std::optional<long> query_level;
    auto* exists = app.add_subcommand("exists", "list the levels admitted over a field");
    exists->add_option("--field", field, "quad:+d, quad:-d, cyclo:n or realcyclo:n")->required();
    exists->add_flag("--trace-type", trace_type, "restrict to alpha = 1");
    exists->add_option("--level", query_level, "exit 3 unless this level is admitted");

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build and verify a lattice of the given level");
    construct->add_option("--field", ca.field)->required();
    construct->add_option("--level", ca.level)->required();
    construct->add_flag("--trace-type", ca.trace_type);
    construct->add_option("--out", ca.out_path, "write the record here instead of stdout");
    construct->add_flag("--no-min", ca.no_min, "skip the minimum");
    construct->add_option("--theta", ca.theta, "theta series up to this norm");
    ca.embed = construct->add_option("--embed", ca.embed_value, "add the generator matrix (bits, default $ARAKELOV_PRECISION_BITS or 128)")
                   ->expected(0, 1);

    std::string in_path, verify_theta;
    bool with_min = false;
    auto* verify = app.add_subcommand("verify", "recompute a record from its ideal, alpha and beta");
    verify->add_option("--in", in_path)->required();
    verify->add_flag("--min", with_min, "also compute the minimum");
    verify->add_option("--theta", verify_theta, "theta series up to this norm");

    bool table = false, examples = false;
    auto* catalog = app.add_subcommand("catalog", "reproduce the published lattices");
    auto* t = catalog->add_flag("--paper-table", table, "the table of known lattices");
    auto* e = catalog->add_flag("--examples", examples, "the worked examples");
    t->excludes(e);
    catalog->require_option(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& pe) {
        const int code = app.exit(pe, out, err);
        return code == 0 ? exit_ok : exit_spec;
    }

    try {
        if (*exists)
            return cmd_exists(field, trace_type, query_level, out);
        if (*construct)
            return cmd_construct(ca, out, err);
        if (*verify)
            return cmd_verify(in_path, with_min, verify_theta, out, err);
        return cmd_catalog(table, out, err);
    } catch (const SpecError& ex) {
        err << ex.what() << "\n";
        return exit_spec;
    } catch (const ModularityFailure& ex) {
        err << ex.what() << "\n";
        return exit_verification;
    } catch (const Error& ex) {
        err << ex.what() << "\n";
        return exit_internal;
    }
}

}  // namespace arakelov
