#pragma once

#include "goursat/boundary_data.hpp"
#include "goursat/grid.hpp"
#include "goursat/multi_index.hpp"
#include "goursat/pde_operator.hpp"
#include "goursat/volterra.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace goursat {

/// Base of all file-format errors.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class MagicMismatch : public FormatError {
public:
    using FormatError::FormatError;
};
class SizeMismatch : public FormatError {
public:
    using FormatError::FormatError;
};
class NonFiniteValue : public FormatError {
public:
    using FormatError::FormatError;
};

/// Contents of a GF4/1 file. `axes` are 0-based here and 1-based on disk;
/// `counts` and `lengths` list one entry per present axis.
struct FieldFile {
    AxisSet axes;
    std::vector<int> counts;
    std::vector<double> lengths;
    std::vector<double> values;
};

/// Header lines "GF4 1", "axes ...", "counts ...", "lengths ...", a blank
/// line, then little-endian float64 values with the last axis fastest.
void write_field(const std::filesystem::path& path, const Field& f);
FieldFile read_field_file(const std::filesystem::path& path);
/// Reads a field and checks it against `grid`; throws SizeMismatch on disagreement.
Field read_field(const std::filesystem::path& path, const Grid4& grid);
Field to_field(const FieldFile& file, const Grid4& grid);

/// CSV with one column per present axis coordinate plus "value", 17 significant digits.
void write_csv(const std::filesystem::path& path, const Field& f);
/// Reads a CSV written by write_csv; the value column is returned in node order.
Field read_csv(const std::filesystem::path& path, const Grid4& grid, AxisSet axes);

enum class BoundaryMode { nonclassical, classical };

/// A full problem description, loaded from a JSON document.
struct ProblemSpec {
    Grid4 grid;
    CoefficientSet coefficients;
    BoundaryMode mode = BoundaryMode::nonclassical;
    /// Present in nonclassical mode (dominant slot filled from `rhs`).
    std::optional<EVector> phi;
    /// Present in classical mode.
    std::optional<ClassicalData> classical;
    /// phi_{1,1,2,2}.
    Field rhs;
    SolverSettings solver;
};

/// Thrown when a problem document is well-formed JSON but violates the schema.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a problem document; relative field paths resolve against `base_dir`.
ProblemSpec parse_problem_spec(const std::string& json_text, const std::filesystem::path& base_dir);
ProblemSpec load_problem_spec(const std::filesystem::path& path);

/// Nonclassical data of a problem: phi as given or converted from classical data.
EVector problem_data(const ProblemSpec& spec);

}  // namespace goursat
