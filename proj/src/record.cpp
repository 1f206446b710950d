#include "arakelov/record.hpp"

#include <set>

#include "arakelov/errors.hpp"

namespace arakelov {

using nlohmann::json;

namespace {

const std::set<std::string> record_keys{"alpha", "beta", "embedding", "field", "gram", "ideal", "level",
                                        "report", "rule", "theta_bound", "trace_type", "verified"};
const std::set<std::string> report_keys{"determinant", "dimension", "even", "integral", "kissing", "level",
                                        "minimum", "theta", "witness_checked"};

[[noreturn]] void bad(const std::string& what) { throw SpecError("record: " + what); }

const json& need(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end())
        bad(std::string("missing \"") + key + "\"");
    return *it;
}

void only_keys(const json& j, const std::set<std::string>& allowed, const char* where)
{
    if (!j.is_object())
        bad(std::string(where) + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            bad(std::string("unknown key \"") + k + "\" in " + where);
}

mpq_class rational_from(const json& j)
{
    if (!j.is_string())
        bad("exact values are decimal strings, got " + j.dump());
    const std::string s = j.get<std::string>();
    std::size_t i = s.size() > 0 && s[0] == '-' ? 1 : 0;
    const std::size_t slash = s.find('/');
    auto digits = [&](std::size_t a, std::size_t b) {
        if (a >= b)
            return false;
        for (std::size_t k = a; k < b; ++k)
            if (s[k] < '0' || s[k] > '9')
                return false;
        return true;
    };
    if (!digits(i, slash == std::string::npos ? s.size() : slash) ||
        (slash != std::string::npos && !digits(slash + 1, s.size())))
        bad("not a rational: \"" + s + "\"");
    mpq_class q(s, 10);
    if (q.get_den() == 0)
        bad("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
}

long integer_from(const json& j, const char* what)
{
    if (!j.is_number_integer())
        bad(std::string(what) + " must be an integer");
    return j.get<long>();
}

std::uint64_t count_from(const json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
        bad(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

bool bool_from(const json& j, const char* what)
{
    if (!j.is_boolean())
        bad(std::string(what) + " must be true or false");
    return j.get<bool>();
}

std::string string_from(const json& j, const char* what)
{
    if (!j.is_string())
        bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

json matrix_to_json(const RatMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        bad("gram must be an array of rows");
    const std::size_t n = j.size();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            bad("gram must be square");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = rational_from(j[i][k]);
    }
    return m;
}

json numeric_to_json(const NumericMatrix& m)
{
    return json{{"layout", m.cm ? "cm" : "real"}, {"precision", m.precision}, {"rows", m.rows}};
}

NumericMatrix numeric_from_json(const json& j)
{
    only_keys(j, {"layout", "precision", "rows"}, "embedding");
    NumericMatrix m;
    const std::string layout = string_from(need(j, "layout"), "layout");
    if (layout != "cm" && layout != "real")
        bad("layout must be \"cm\" or \"real\"");
    m.cm = layout == "cm";
    m.precision = integer_from(need(j, "precision"), "precision");
    const json& rows = need(j, "rows");
    if (!rows.is_array())
        bad("embedding rows must be an array");
    for (const auto& row : rows) {
        if (!row.is_array())
            bad("embedding rows must be arrays");
        std::vector<std::string> r;
        for (const auto& x : row)
            r.push_back(string_from(x, "embedding entry"));
        m.rows.push_back(std::move(r));
    }
    return m;
}

}  // namespace

NumericMatrix to_numeric(const EmbeddingMatrix& m)
{
    NumericMatrix out;
    out.precision = m.precision;
    out.cm = m.cm;
    for (const auto& row : m.rows) {
        std::vector<std::string> r;
        for (const auto& x : row)
            r.push_back(x.to_string());
        out.rows.push_back(std::move(r));
    }
    return out;
}

json rationals_to_json(const std::vector<mpq_class>& v)
{
    json a = json::array();
    for (const auto& q : v)
        a.push_back(q.get_str());
    return a;
}

std::vector<mpq_class> rationals_from_json(const json& j)
{
    if (!j.is_array())
        bad("coefficient vectors are arrays of decimal strings");
    std::vector<mpq_class> v;
    for (const auto& x : j)
        v.push_back(rational_from(x));
    return v;
}

json report_to_json(const LatticeReport& r)
{
    json j{{"determinant", r.determinant.get_str()},
           {"dimension", r.dimension},
           {"even", r.even},
           {"integral", r.integral},
           {"witness_checked", r.witness_checked}};
    if (r.minimum) {
        j["minimum"] = r.minimum->minimum.get_str();
        j["kissing"] = r.minimum->kissing;
    }
    if (!r.theta.empty()) {
        json t = json::array();
        for (const auto& term : r.theta)
            t.push_back(json{{"count", term.count}, {"norm", term.norm.get_str()}});
        j["theta"] = std::move(t);
    }
    if (r.level)
        j["level"] = *r.level;
    return j;
}

LatticeReport report_from_json(const json& j)
{
    only_keys(j, report_keys, "report");
    LatticeReport r;
    r.determinant = rational_from(need(j, "determinant"));
    r.dimension = count_from(need(j, "dimension"), "dimension");
    r.even = bool_from(need(j, "even"), "even");
    r.integral = bool_from(need(j, "integral"), "integral");
    r.witness_checked = bool_from(need(j, "witness_checked"), "witness_checked");
    if (j.contains("minimum") != j.contains("kissing"))
        bad("minimum and kissing come together");
    if (j.contains("minimum"))
        r.minimum = MinimumResult{rational_from(j["minimum"]), count_from(j["kissing"], "kissing")};
    if (j.contains("theta")) {
        const json& t = j["theta"];
        if (!t.is_array())
            bad("theta must be an array");
        for (const auto& term : t) {
            only_keys(term, {"count", "norm"}, "theta term");
            r.theta.push_back({rational_from(need(term, "norm")), count_from(need(term, "count"), "count")});
        }
    }
    if (j.contains("level"))
        r.level = integer_from(j["level"], "level");
    return r;
}

json to_json(const LatticeRecord& r)
{
    json j{{"alpha", rationals_to_json(r.alpha)},
           {"beta", rationals_to_json(r.beta)},
           {"field", r.field},
           {"ideal", r.ideal.format()},
           {"level", r.level},
           {"rule", r.rule},
           {"trace_type", r.trace_type},
           {"verified", r.verified}};
    if (r.gram)
        j["gram"] = matrix_to_json(*r.gram);
    if (r.report)
        j["report"] = report_to_json(*r.report);
    if (r.theta_bound)
        j["theta_bound"] = r.theta_bound->get_str();
    if (r.embedding)
        j["embedding"] = numeric_to_json(*r.embedding);
    return j;
}

LatticeRecord record_from_json(const json& j)
{
    only_keys(j, record_keys, "record");
    LatticeRecord r;
    r.field = string_from(need(j, "field"), "field");
    r.ideal = IdealRecipe::parse(string_from(need(j, "ideal"), "ideal"));
    r.alpha = rationals_from_json(need(j, "alpha"));
    r.beta = rationals_from_json(need(j, "beta"));
    r.level = integer_from(need(j, "level"), "level");
    r.rule = string_from(need(j, "rule"), "rule");
    r.trace_type = bool_from(need(j, "trace_type"), "trace_type");
    r.verified = bool_from(need(j, "verified"), "verified");
    if (j.contains("gram"))
        r.gram = matrix_from_json(j["gram"]);
    if (j.contains("report"))
        r.report = report_from_json(j["report"]);
    if (j.contains("theta_bound"))
        r.theta_bound = rational_from(j["theta_bound"]);
    if (j.contains("embedding"))
        r.embedding = numeric_from_json(j["embedding"]);
    return r;
}

std::string emit_record(const LatticeRecord& r) { return to_json(r).dump(2) + "\n"; }

LatticeRecord parse_record(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    return record_from_json(j);
}

json witness_to_json(const ConstructionWitness& w)
{
    return json{{"alpha", rationals_to_json(w.alpha.coefficients())},
                {"beta", rationals_to_json(w.beta.coefficients())},
                {"ideal", w.ideal.format()},
                {"level", w.level}};
}

json verdict_to_json(const ExistenceVerdict& v)
{
    json ws = json::array();
    for (long level : v.levels) {
        const auto& w = v.witnesses.at(level);
        if (w)
            ws.push_back(witness_to_json(*w));
    }
    return json{{"field", v.field->spec()},
                {"levels", v.levels},
                {"rule", v.rule},
                {"trace_type", v.trace_type},
                {"witnesses", std::move(ws)}};
}

LatticeRecord make_record(const IdealLattice& lat, const ConstructionWitness& w, const LatticeReport& report,
                          const std::optional<mpq_class>& theta_bound, bool trace_type, const std::string& rule)
{
    LatticeRecord r;
    r.field = lat.field()->spec();
    r.ideal = w.ideal;
    r.alpha = lat.alpha.coefficients();
    r.beta = w.beta.coefficients();
    r.level = w.level;
    r.trace_type = trace_type;
    r.rule = rule;
    r.gram = lat.gram;
    r.report = report;
    r.theta_bound = theta_bound;
    r.verified = report.witness_checked;
    return r;
}

}  // namespace arakelov
