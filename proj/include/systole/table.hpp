#pragma once

#include <string>
#include <vector>

#include "systole/bounds.hpp"

namespace systole {

enum class TableFormat { csv, text, json };

TableFormat parse_table_format(const std::string& name);

/// Decimal string rounded half-to-even at `decimals` places. Values within
/// 1e-9 of a tie count as ties (3.805 prints as 3.80).
std::string round_half_even(double value, int decimals = 2);

/// Columns: genus, construction, systole, ratio, upper_bound, provenance.
/// JSON carries the unrounded numbers as well.
std::string format_table(const std::vector<BoundRecord>& rows, TableFormat format);

}  // namespace systole
