#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "arakelov/existence.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

/* Decimal rendering of a generator matrix at a stated precision. */
struct NumericMatrix {
    long precision = 0;
    bool cm = false;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const NumericMatrix& o) const = default;
};

NumericMatrix to_numeric(const EmbeddingMatrix& m);

/* A lattice (I, alpha) with its modularity witness (beta, level).
 * Exact values are carried as canonical rationals; gram and report are
 * present once the lattice has been constructed. */
struct LatticeRecord {
    std::string field;
    IdealRecipe ideal;
    std::vector<mpq_class> alpha;
    std::vector<mpq_class> beta;
    long level = 0;
    bool trace_type = false;
    std::string rule;
    std::optional<RatMatrix> gram;
    std::optional<LatticeReport> report;
    std::optional<mpq_class> theta_bound;
    bool verified = false;
    std::optional<NumericMatrix> embedding;
};

/* Key order is canonical (sorted), so dump() of the result is stable. */
nlohmann::json to_json(const LatticeRecord& r);

/* Throws SpecError on anything malformed. */
LatticeRecord record_from_json(const nlohmann::json& j);

std::string emit_record(const LatticeRecord& r);
LatticeRecord parse_record(std::string_view text);

nlohmann::json report_to_json(const LatticeReport& r);
LatticeReport report_from_json(const nlohmann::json& j);

nlohmann::json rationals_to_json(const std::vector<mpq_class>& v);
std::vector<mpq_class> rationals_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const ConstructionWitness& w);
nlohmann::json verdict_to_json(const ExistenceVerdict& v);

/* Record for a lattice whose witness has just been verified. */
LatticeRecord make_record(const IdealLattice& lat, const ConstructionWitness& w, const LatticeReport& report,
                          const std::optional<mpq_class>& theta_bound, bool trace_type, const std::string& rule);

}  // namespace arakelov
