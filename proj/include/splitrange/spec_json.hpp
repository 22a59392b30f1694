#pragma once

#include <string>

#include <json.hpp>

#include "splitrange/operators.hpp"
#include "splitrange/splitting.hpp"

namespace splitrange {

/// Build an operator from its declarative JSON spec. Kinds:
///   {"kind":"ball", "center":[...], "radius": r}         normal cone of a ball
///   {"kind":"affine-subspace", "base":[...], "basis":[[row],...]}
///                                                        normal cone of base+span(rows)
///   {"kind":"linear", "matrix":[[row],...]}              monotone linear map
///   {"kind":"prox", "function":"name", "window": h, "depth": d}
///                                                        subdifferential of a builtin
///   {"kind":"fne", "map":"identity"|[[row],...]}         T^{-1} - Id for firmly
///                                                        nonexpansive T
///   {"kind":"inverse"|"vee", "inner": spec}              combinators
///   {"kind":"shift-inner"|"shift-outer", "inner": spec, "shift":[...]}
/// Matrices are row-major (arrays of rows). Throws std::invalid_argument
/// naming the offending field on malformed input.
OperatorDescriptor operator_from_spec(const nlohmann::json& spec);

/// A pair file is {"A": <operator spec>, "B": <operator spec>}.
OperatorPair pair_from_spec(const nlohmann::json& spec);

/// Read and parse a pair file from disk.
OperatorPair load_pair_file(const std::string& path);

/// Parse "x,y,..." into a vector (used by --w style flags).
Vector parse_vector_string(const std::string& text);

}  // namespace splitrange
