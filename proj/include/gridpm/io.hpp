#pragma once

#include <string>

#include <json.hpp>

#include "gridpm/analysis.hpp"
#include "gridpm/constructions.hpp"
#include "gridpm/grid.hpp"
#include "gridpm/width.hpp"

namespace gridpm {

/// Thrown on malformed input files (CLI exit code 2).
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_ = 0;
};

/// One line of space-separated values; an empty line is the empty
/// permutation.
Permutation parse_permutation(const std::string& text);
std::string format_permutation(const Permutation& p);

/// Matrix file: one line per row, top row first, tokens separated by blanks.
/// Tokens: `.` empty, `+` Inc, `-` Dec, `Av(<digits>)`, `F{p1;p2;...}`.
/// A trailing `!` on Av/F tokens declares bounded grid-width.
GriddingMatrix parse_matrix(const std::string& text);
std::string format_matrix(const GriddingMatrix& m);

/// Gridded permutation: permutation line, then `cols: ...` and `rows: ...`
/// with the interior cuts. The matrix comes separately.
GriddedPermutation parse_gridded(const std::string& text, const GriddingMatrix& m);
std::string format_gridded(const GriddedPermutation& g);

struct CnfSummary {
    int variables = 0;
    int clauses = 0;
};

/// DIMACS header and clause count; clause bodies are only counted.
CnfSummary parse_dimacs(const std::string& text);

std::string read_file(const std::string& path);

nlohmann::json to_json(const Permutation& p);
nlohmann::json to_json(const DichotomyVerdict& v);
nlohmann::json to_json(const GridTree& t);
nlohmann::json to_json(const SignedPermutation& s);
nlohmann::json to_json(const GriddingMatrix& m);
nlohmann::json to_json(const HardnessProvenance& p);
nlohmann::json to_json(const HardnessInstance& i);

SignedPermutation signed_permutation_from_json(const nlohmann::json& j);
GriddingMatrix matrix_from_json(const nlohmann::json& j);
HardnessProvenance provenance_from_json(const nlohmann::json& j);
HardnessInstance instance_from_json(const nlohmann::json& j);

}  // namespace gridpm
