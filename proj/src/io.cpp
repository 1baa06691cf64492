#include "goursat/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace goursat {

namespace {

using nlohmann::json;

double to_little_endian(double v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        std::reverse(bytes, bytes + sizeof v);
        std::memcpy(&v, bytes, sizeof v);
        return v;
    }
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    std::string axes = "axes", counts = "counts", lengths = "lengths";
    for (int k : f.axes().list()) {
        axes += " " + std::to_string(k + 1);
        counts += " " + std::to_string(f.grid().count(k));
        lengths += " " + format_g17(f.grid().length(k));
    }
    out << "GF4 1\n" << axes << '\n' << counts << '\n' << lengths << "\n\n";
    for (double v : f.values()) {
        const double le = to_little_endian(v);
        out.write(reinterpret_cast<const char*>(&le), sizeof le);
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

FieldFile read_field_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || tokens(line) != std::vector<std::string>{"GF4", "1"})
        throw MagicMismatch(path.string() + ": not a GF4/1 file");

    FieldFile file;
    auto header = [&](const char* key) {
        if (!std::getline(in, line)) throw FormatError(path.string() + ": truncated header");
        auto t = tokens(line);
        if (t.empty() || t[0] != key) throw FormatError(path.string() + ": expected '" + key + "' line");
        t.erase(t.begin());
        return t;
    };
    try {
        std::vector<int> axes;
        for (const auto& s : header("axes")) axes.push_back(std::stoi(s));
        for (const auto& s : header("counts")) file.counts.push_back(std::stoi(s));
        for (const auto& s : header("lengths")) file.lengths.push_back(std::stod(s));
        int last = 0;
        for (int a : axes) {
            if (a < 1 || a > kDims || a <= last) throw FormatError(path.string() + ": bad axes list");
            file.axes = file.axes.with(a - 1);
            last = a;
        }
        if (file.counts.size() != axes.size() || file.lengths.size() != axes.size())
            throw FormatError(path.string() + ": axes, counts and lengths disagree");
    } catch (const std::logic_error&) {
        throw FormatError(path.string() + ": malformed header number");
    }
    if (!std::getline(in, line) || !tokens(line).empty())
        throw FormatError(path.string() + ": missing blank line after header");

    std::size_t expected = 1;
    for (int c : file.counts) {
        if (c < 1) throw FormatError(path.string() + ": bad count");
        expected *= static_cast<std::size_t>(c);
    }
    std::vector<char> payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (payload.size() != expected * sizeof(double))
        throw SizeMismatch(path.string() + ": payload has " + std::to_string(payload.size()) +
                           " bytes, expected " + std::to_string(expected * sizeof(double)));
    file.values.resize(expected);
    std::memcpy(file.values.data(), payload.data(), payload.size());
    for (double& v : file.values) {
        v = to_little_endian(v);
        if (!std::isfinite(v)) throw NonFiniteValue(path.string() + ": non-finite value in payload");
    }
    return file;
}

Field to_field(const FieldFile& file, const Grid4& grid) {
    const std::vector<int> axes = file.axes.list();
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const int k = axes[a];
        if (file.counts[a] != grid.count(k))
            throw SizeMismatch("field count on axis " + std::to_string(k + 1) + " does not match the grid");
        if (std::abs(file.lengths[a] - grid.length(k)) > 1e-12 * grid.length(k))
            throw SizeMismatch("field length on axis " + std::to_string(k + 1) + " does not match the grid");
    }
    return Field(grid, file.axes, file.values);
}

Field read_field(const std::filesystem::path& path, const Grid4& grid) {
    return to_field(read_field_file(path), grid);
}

void write_csv(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::vector<int> axes = f.axes().list();
    for (int k : axes) out << 'x' << (k + 1) << ',';
    out << "value\n";
    const Index4 d = f.dims();
    Index4 idx{};
    std::size_t p = 0;
    auto v = f.values();
    for (idx[0] = 0; idx[0] < d[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < d[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < d[2]; ++idx[2])
                for (idx[3] = 0; idx[3] < d[3]; ++idx[3]) {
                    for (int k : axes) out << format_g17(f.grid().node(k, idx[k])) << ',';
                    out << format_g17(v[p++]) << '\n';
                }
}

Field read_csv(const std::filesystem::path& path, const Grid4& grid, AxisSet axes) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path.string() + ": empty CSV");
    const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns != static_cast<std::size_t>(axes.size()) + 1)
        throw FormatError(path.string() + ": column count does not match the axes");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t cut = line.rfind(',');
        try {
            values.push_back(std::stod(cut == std::string::npos ? line : line.substr(cut + 1)));
        } catch (const std::logic_error&) {
            throw FormatError(path.string() + ": malformed value");
        }
    }
    Field f(grid, axes);
    if (values.size() != f.size()) throw SizeMismatch(path.string() + ": row count does not match the grid");
    for (double v : values)
        if (!std::isfinite(v)) throw NonFiniteValue(path.string() + ": non-finite value");
    return Field(grid, axes, std::move(values));
}

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw SpecError(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw SpecError("unknown key '" + key + "' in " + where);
    }
}

// A number (constant over `axes`) or {"file": path}. With `exact_axes` the
// file's axes must match it exactly; otherwise any axes are accepted.
Field field_value(const json& v, const Grid4& grid, AxisSet axes, bool exact_axes,
                  const std::filesystem::path& base, const std::string& where) {
    if (v.is_number()) {
        const double c = v.get<double>();
        if (!std::isfinite(c)) throw SpecError(where + " is not finite");
        return Field::constant(grid, exact_axes ? axes : AxisSet{}, c);
    }
    require_keys(v, {"file"}, where);
    if (!v.contains("file") || !v["file"].is_string()) throw SpecError(where + " needs a number or {\"file\": path}");
    std::filesystem::path p = v["file"].get<std::string>();
    if (p.is_relative()) p = base / p;
    Field f = read_field(p, grid);
    if (exact_axes && f.axes() != axes) throw SpecError(where + " has the wrong axes");
    if (!exact_axes && !f.axes().subset_of(axes)) throw SpecError(where + " has unexpected axes");
    return f;
}

Grid4 parse_grid(const json& g) {
    require_keys(g, {"lengths", "counts"}, "grid");
    try {
        auto lengths = g.at("lengths").get<std::array<double, kDims>>();
        auto counts = g.at("counts").get<std::array<int, kDims>>();
        return Grid4(lengths, counts);
    } catch (const json::exception& e) {
        throw SpecError(std::string("grid: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("grid: ") + e.what());
    }
}

SolverSettings parse_solver(const json& s) {
    SolverSettings out;
    require_keys(s, {"p", "tol", "max_iter", "rule", "mode"}, "solver");
    try {
        if (s.contains("p")) {
            if (s["p"].is_string()) {
                const std::string t = s["p"].get<std::string>();
                if (t != "inf") throw SpecError("solver.p must be a number or \"inf\"");
                out.norm.p = kInfinity;
            } else {
                out.norm.p = s["p"].get<double>();
            }
            if (!(out.norm.p >= 1.0)) throw SpecError("solver.p must be at least 1");
        }
        if (s.contains("tol")) out.tol = s["tol"].get<double>();
        if (s.contains("max_iter")) out.max_iter = s["max_iter"].get<int>();
        if (s.contains("rule")) out.rule = parse_rule(s["rule"].get<std::string>());
        if (s.contains("mode")) out.mode = parse_mode(s["mode"].get<std::string>());
    } catch (const json::exception& e) {
        throw SpecError(std::string("solver: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("solver: ") + e.what());
    }
    if (!(out.tol > 0.0)) throw SpecError("solver.tol must be positive");
    if (out.max_iter < 1) throw SpecError("solver.max_iter must be at least 1");
    return out;
}

MultiIndex parse_index(const std::string& key, const std::string& where) {
    try {
        return MultiIndex::parse(key);
    } catch (const std::invalid_argument& e) {
        throw SpecError(where + ": " + e.what());
    }
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
    require_keys(doc, {"grid", "coefficients", "boundary", "rhs", "solver"}, "problem");
    if (!doc.contains("grid")) throw SpecError("problem needs a grid");
    const Grid4 grid = parse_grid(doc["grid"]);

    CoefficientSet a(grid);
    if (doc.contains("coefficients")) {
        if (!doc["coefficients"].is_object()) throw SpecError("coefficients must be an object");
        for (const auto& [key, value] : doc["coefficients"].items()) {
            const MultiIndex i = parse_index(key, "coefficients");
            if (i.is_dominant()) throw SpecError("coefficients: the dominant index carries no coefficient");
            a.set(i, field_value(value, grid, AxisSet::all(), false, base_dir, "coefficient " + key));
        }
    }

    Field rhs(grid, AxisSet::all());
    if (doc.contains("rhs"))
        rhs = broadcast(field_value(doc["rhs"], grid, AxisSet::all(), false, base_dir, "rhs"), AxisSet::all());

    ProblemSpec spec{grid, std::move(a), BoundaryMode::nonclassical, std::nullopt, std::nullopt, std::move(rhs),
                     doc.contains("solver") ? parse_solver(doc["solver"]) : SolverSettings{}};

    const json boundary = doc.contains("boundary") ? doc["boundary"] : json::object();
    if (!boundary.is_object()) throw SpecError("boundary must be an object");
    const std::string mode = boundary.value("mode", std::string("nonclassical"));
    if (mode == "nonclassical") {
        require_keys(boundary, {"mode", "components"}, "boundary");
        EVector phi(grid);
        if (boundary.contains("components")) {
            if (!boundary["components"].is_object()) throw SpecError("boundary.components must be an object");
            for (const auto& [key, value] : boundary["components"].items()) {
                const MultiIndex i = parse_index(key, "boundary.components");
                if (i.is_dominant()) throw SpecError("boundary.components: give the dominant part as rhs");
                phi.set(i, field_value(value, grid, i.full_axes(), true, base_dir, "component " + key));
            }
        }
        phi.set(MultiIndex::dominant(), spec.rhs);
        spec.phi = std::move(phi);
    } else if (mode == "classical") {
        require_keys(boundary, {"mode", "F", "g", "psi", "Phi", "T", "S"}, "boundary");
        ClassicalData c(grid);
        for (Classical which : {Classical::F, Classical::g, Classical::psi, Classical::Phi, Classical::T,
                                Classical::S}) {
            const std::string key(classical_name(which));
            if (boundary.contains(key))
                c.set(which, field_value(boundary[key], grid, classical_axes(which), true, base_dir, key));
        }
        spec.mode = BoundaryMode::classical;
        spec.classical = std::move(c);
    } else {
        throw SpecError("boundary.mode must be \"nonclassical\" or \"classical\"");
    }
    return spec;
}

ProblemSpec load_problem_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem_spec(buf.str(), path.parent_path());
}

EVector problem_data(const ProblemSpec& spec) {
    if (spec.mode == BoundaryMode::nonclassical) return *spec.phi;
    EVector phi = classical_to_nonclassical(*spec.classical).phi;
    phi.set(MultiIndex::dominant(), spec.rhs);
    return phi;
}

}  // namespace goursat
