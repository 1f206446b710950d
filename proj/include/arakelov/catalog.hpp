#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace arakelov {

/* A published lattice and the invariants printed for it. */
struct CatalogRow {
    std::string name;
    std::string field;
    long level = 0;
    bool trace_type = true;
    std::string ideal;               // empty: use the constructor's witness
    long alpha_gamma_power = 0;      // explicit alpha = (2 - 2cos(2pi/n))^k
    std::size_t dimension = 0;
    long minimum = 0;
    std::optional<long> determinant;
    std::optional<bool> even;
};

std::vector<CatalogRow> published_table();
std::vector<CatalogRow> published_examples();

/* Constructs, verifies and compares one row; never throws for a
 * mathematical failure, which lands in "failures" instead. */
nlohmann::json run_catalog_row(const CatalogRow& row);

/* Rows run concurrently; results keep row order. */
nlohmann::json run_catalog(const std::vector<CatalogRow>& rows);

}  // namespace arakelov
