// Embedded reference values (data/reference_tables.csv, compiled in at configure time).

#pragma once

#include <string_view>
#include <vector>

namespace dqo {

struct ReferenceRow {
    int table;
    double alpha;
    double E;
    double U;
    double Egibbs;
};

std::string_view reference_tables_csv() noexcept;

// Rows of table 1 or 2 in file order. Throws InvalidParameter for any other index.
std::vector<ReferenceRow> reference_table(int table);

}  // namespace dqo
