#include "arakelov/catalog.hpp"

#include <future>

#include "arakelov/errors.hpp"
#include "arakelov/existence.hpp"
#include "arakelov/lattice.hpp"
#include "arakelov/record.hpp"

namespace arakelov {

using nlohmann::json;

std::vector<CatalogRow> published_table()
{
    /* level, field, ideal, alpha = 1, dim, min as printed; det is level^{dim/2};
     * the named lattices are even */
    return {
        {"n=28 level 7", "realcyclo:28", 7, true, "P7^-1*P2^-1", 0, 6, 2, 343, true},
        {"n=44 level 11", "realcyclo:44", 11, true, "P11^-2*P2^-1", 0, 10, 6, 161051, true},
        {"n=92 level 23", "realcyclo:92", 23, true, "P23^-5*P2^-1", 0, 22, 12, 952809757913927L, true},
    };
}

std::vector<CatalogRow> published_examples()
{
    return {
        /* printed pair for the Z^6 example */
        {"realcyclo:13 unimodular, printed pair", "realcyclo:13", 1, false, "P13^-3", -1, 6, 1, 1, std::nullopt},
        {"realcyclo:13 unimodular, constructed", "realcyclo:13", 1, false, "", 0, 6, 1, 1, std::nullopt},
        {"realcyclo:36 extremal 3-modular", "realcyclo:36", 3, true, "P3^-3*P2^-1", 0, 6, 2, 27, true},
        /* D_K^{-1/2} over the degree 21 subfield of Q(zeta_49); odd since 8 does not divide 21 */
        {"realcyclo:49 extremal unimodular", "realcyclo:49", 1, true, "P7^-19", 0, 21, 2, 1, false},
    };
}

json run_catalog_row(const CatalogRow& row)
{
    json expected{{"dimension", row.dimension}, {"level", row.level}, {"minimum", std::to_string(row.minimum)}};
    if (row.determinant)
        expected["determinant"] = std::to_string(*row.determinant);
    if (row.even)
        expected["even"] = *row.even;
    json out{{"name", row.name}, {"field", row.field}, {"expected", expected}};
    std::vector<std::string> failures;
    try {
        const Field f = NumberField::parse(row.field);
        std::optional<ConstructionWitness> w;
        if (row.ideal.empty()) {
            const auto v = classify(f, row.trace_type);
            if (v.admits(row.level))
                w = v.witnesses.at(row.level);
            else
                failures.push_back("level " + std::to_string(row.level) + " not admitted (" + v.rule + ")");
        } else if (const auto beta = sqrt_integer(f, row.level)) {
            FieldElement alpha = FieldElement::from_rational(f, 1);
            if (row.alpha_gamma_power)
                alpha = two_minus_two_cos(f, f->parameter()).pow(row.alpha_gamma_power);
            w = ConstructionWitness{row.level, *beta, alpha, IdealRecipe::parse(row.ideal)};
        } else {
            failures.push_back("no beta with beta conj(beta) = " + std::to_string(row.level));
        }
        if (!w) {
            out["failures"] = failures;
            out["pass"] = false;
            return out;
        }
        out["ideal"] = w->ideal.format();
        out["alpha"] = rationals_to_json(w->alpha.coefficients());
        const IdealLattice lat = build_lattice(realize(w->ideal, f), w->alpha);
        const LatticeReport r = verify_modularity(lat, *w);
        out["observed"] = report_to_json(r);
        if (r.dimension != row.dimension)
            failures.push_back("dimension " + std::to_string(r.dimension));
        if (r.minimum->minimum != row.minimum)
            failures.push_back("minimum " + r.minimum->minimum.get_str());
        if (row.determinant && r.determinant != *row.determinant)
            failures.push_back("determinant " + r.determinant.get_str());
        if (row.even && r.even != *row.even)
            failures.push_back(r.even ? "even" : "odd");
    } catch (const ModularityFailure& e) {
        out["clause"] = e.clause();
        failures.push_back(e.what());
    } catch (const Error& e) {
        failures.push_back(e.what());
    }
    out["failures"] = failures;
    out["pass"] = failures.empty();
    return out;
}

json run_catalog(const std::vector<CatalogRow>& rows)
{
    std::vector<std::future<json>> jobs;
    for (const auto& row : rows)
        jobs.push_back(std::async(std::launch::async, [&row] { return run_catalog_row(row); }));
    json out = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        json r = jobs[i].get();
        r["row"] = i;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace arakelov
