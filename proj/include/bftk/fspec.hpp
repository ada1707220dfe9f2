#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bftk/measures.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

/// Unified loader for the function-spec forms shared by the CLI:
///   tt:<n>:<hex>          packed table, bit x of the hex integer = f(x)
///   fam:<name>:<p1,p2>    registered family
///   formula:<text>        read-once formula, normalized variable order
///   graph:<name>:<verts>  built-in graph property on edge variables
TruthTable load_function_spec(std::string_view spec);

/// One record of requested measures; ids: s, s0, s1, avg-s, bs, C, C0, C1,
/// D, deg, deg2, lambda, adeg. Arity caps raise errors naming the measure.
MeasureRecord measure_function(const TruthTable& f, const std::string& fspec,
                               const std::vector<std::string>& measures);

std::string record_json(const MeasureRecord& rec);
std::string record_csv_header();
std::string record_csv(const MeasureRecord& rec);

}  // namespace bftk
