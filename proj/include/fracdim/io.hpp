#ifndef FRACDIM_IO_HPP
#define FRACDIM_IO_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/ifs.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/quantization.hpp"
#include "fracdim/symbolic.hpp"

namespace fracdim {

using json = nlohmann::json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() && !text.empty();
}

struct CsvTable {
  std::vector<std::string> header;
  std::size_t columns = 0;
  std::vector<double> values;  // row-major
};

// Numeric table with an optional header row. Blank lines and lines starting
// with '#' are skipped.
inline CsvTable read_csv(std::istream& in, const std::string& name) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_csv(view);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size() && numeric; ++i) numeric = parse_double(fields[i], row[i]);
    if (first) {
      first = false;
      table.columns = fields.size();
      if (!numeric) {
        for (auto f : fields) table.header.emplace_back(f);
        continue;
      }
    }
    require(numeric, ErrorKind::parse, name + ":" + std::to_string(lineno) + ": non-numeric field");
    require(fields.size() == table.columns, ErrorKind::parse,
            name + ":" + std::to_string(lineno) + ": expected " + std::to_string(table.columns) +
                " columns, found " + std::to_string(fields.size()));
    table.values.insert(table.values.end(), row.begin(), row.end());
  }
  require(!table.values.empty(), ErrorKind::parse, name + ": no data rows");
  return table;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse, path + ": cannot open file");
  return in;
}

}  // namespace detail

/// Point set CSV: one point per row, m columns, optional header row.
inline PointSet read_point_set_csv(std::istream& in, const std::string& name = "<input>") {
  auto table = detail::read_csv(in, name);
  return PointSet(table.columns, std::move(table.values));
}

inline PointSet read_point_set_csv(const std::string& path) {
  auto in = detail::open_input(path);
  return read_point_set_csv(in, path);
}

/// Measure CSV: header "x1,...,xm,w" followed by one atom per row.
inline DiscreteMeasure read_measure_csv(std::istream& in, const std::string& name = "<input>") {
  auto table = detail::read_csv(in, name);
  require(!table.header.empty(), ErrorKind::parse, name + ": missing header row x1,...,xm,w");
  require(table.columns >= 2, ErrorKind::parse, name + ": need at least one coordinate and a weight");
  require(table.header.back() == "w", ErrorKind::parse, name + ": last column must be named w");
  for (std::size_t d = 0; d + 1 < table.columns; ++d)
    require(table.header[d] == "x" + std::to_string(d + 1), ErrorKind::parse,
            name + ": coordinate columns must be named x1,...,xm");
  const std::size_t m = table.columns - 1;
  const std::size_t rows = table.values.size() / table.columns;
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(rows * m);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = table.values.data() + i * table.columns;
    coords.insert(coords.end(), row, row + m);
    weights.push_back(row[m]);
  }
  return DiscreteMeasure(m, std::move(coords), std::move(weights));
}

inline DiscreteMeasure read_measure_csv(const std::string& path) {
  auto in = detail::open_input(path);
  return read_measure_csv(in, path);
}

inline void write_point_set_csv(std::ostream& out, const PointSet& e) {
  for (std::size_t d = 0; d < e.dim(); ++d) out << (d ? "," : "") << 'x' << d + 1;
  out << '\n';
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t d = 0; d < e.dim(); ++d) out << (d ? "," : "") << format_double(e[i][d]);
    out << '\n';
  }
}

inline void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
  for (std::size_t d = 0; d < mu.dim(); ++d) out << 'x' << d + 1 << ',';
  out << "w\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t d = 0; d < mu.dim(); ++d) out << format_double(mu[i][d]) << ',';
    out << format_double(mu.weight(i)) << '\n';
  }
}

inline void write_curve_csv(std::ostream& out, const ErrorCurve& curve) {
  out << "n,V,exact\n";
  for (const auto& e : curve.entries)
    out << e.n << ',' << format_double(e.value) << ',' << (e.exact ? "true" : "false") << '\n';
}

namespace detail {

template <class F>
auto parse_guard(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, name + ": " + e.what());
  }
}

}  // namespace detail

/// IFS JSON: {"dim": m, "maps": [{"ratio": c, "offset": [...], "orthogonal": [[...], ...]}],
/// "probabilities": [...]}. "orthogonal" is optional (identity).
inline IFSystem ifs_from_json(const json& j, const std::string& name = "<ifs>") {
  return detail::parse_guard(name, [&] {
    require(j.is_object(), ErrorKind::parse, name + ": IFS must be a JSON object");
    const auto& maps_json = j.at("maps");
    require(maps_json.is_array(), ErrorKind::parse, name + ": \"maps\" must be an array");
    std::vector<SimilarityMap> maps;
    for (const auto& mj : maps_json) {
      const double ratio = mj.at("ratio").get<double>();
      auto offset = mj.at("offset").get<std::vector<double>>();
      std::vector<double> orthogonal;
      if (mj.contains("orthogonal"))
        for (const auto& row : mj.at("orthogonal")) {
          const auto values = row.get<std::vector<double>>();
          orthogonal.insert(orthogonal.end(), values.begin(), values.end());
        }
      maps.emplace_back(ratio, std::move(offset), std::move(orthogonal));
    }
    auto probs = j.at("probabilities").get<std::vector<double>>();
    IFSystem ifs(std::move(maps), std::move(probs));
    if (j.contains("dim"))
      require(j.at("dim").get<std::size_t>() == ifs.dim(), ErrorKind::invalid_input,
              name + ": \"dim\" does not match the map offsets");
    return ifs;
  });
}

inline json to_json(const IFSystem& ifs) {
  json maps = json::array();
  const std::size_t m = ifs.dim();
  for (const auto& f : ifs.maps()) {
    json o = json::array();
    for (std::size_t a = 0; a < m; ++a)
      o.push_back(std::vector<double>(f.orthogonal().begin() + static_cast<std::ptrdiff_t>(a * m),
                                      f.orthogonal().begin() + static_cast<std::ptrdiff_t>((a + 1) * m)));
    maps.push_back({{"ratio", f.ratio()}, {"offset", f.offset()}, {"orthogonal", o}});
  }
  return {{"dim", m}, {"maps", maps}, {"probabilities", ifs.probabilities()}};
}

inline json read_json_file(const std::string& path) {
  auto in = detail::open_input(path);
  return detail::parse_guard(path, [&] { return json::parse(in); });
}

inline IFSystem read_ifs_json(const std::string& path) { return ifs_from_json(read_json_file(path), path); }

inline json to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) atoms.push_back(std::vector<double>(mu[i].begin(), mu[i].end()));
  return {{"atoms", atoms}, {"weights", std::vector<double>(mu.weights().begin(), mu.weights().end())}};
}

inline DiscreteMeasure measure_from_json(const json& j, const std::string& name) {
  return detail::parse_guard(name, [&] {
    const auto atoms = j.at("atoms").get<std::vector<std::vector<double>>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    require(!atoms.empty(), ErrorKind::parse, name + ": \"atoms\" is empty");
    std::vector<double> coords;
    for (const auto& a : atoms) {
      require(a.size() == atoms.front().size(), ErrorKind::parse, name + ": ragged atoms");
      coords.insert(coords.end(), a.begin(), a.end());
    }
    return DiscreteMeasure(atoms.front().size(), std::move(coords), std::move(weights));
  });
}

/// Symbolic measure JSON, tagged by "op":
///   {"op": "dirac", "atoms": [[...]], "weights": [...]}
///   {"op": "invariant", "ifs": {...}}
///   {"op": "convolve", "args": [a, b]}
///   {"op": "scale", "beta": b, "arg": a}
///   {"op": "translate", "x": [...], "arg": a}
///   {"op": "mixture", "components": [{"weight": w, "measure": a}, ...]}
inline SymbolicMeasure symbolic_from_json(const json& j, const std::string& name = "<symbolic>") {
  return detail::parse_guard(name, [&]() -> SymbolicMeasure {
    const auto op = j.at("op").get<std::string>();
    if (op == "dirac") return SymbolicMeasure::dirac(DiracCombination(measure_from_json(j, name)));
    if (op == "invariant") return SymbolicMeasure::invariant(ifs_from_json(j.at("ifs"), name));
    if (op == "convolve") {
      const auto& args = j.at("args");
      require(args.is_array() && args.size() == 2, ErrorKind::parse,
              name + ": convolve takes exactly two args");
      return SymbolicMeasure::convolve(symbolic_from_json(args[0], name), symbolic_from_json(args[1], name));
    }
    if (op == "scale")
      return SymbolicMeasure::scale(symbolic_from_json(j.at("arg"), name), j.at("beta").get<double>());
    if (op == "translate")
      return SymbolicMeasure::translate(symbolic_from_json(j.at("arg"), name),
                                        j.at("x").get<std::vector<double>>());
    if (op == "mixture") {
      std::vector<std::pair<double, SymbolicMeasure>> parts;
      for (const auto& c : j.at("components"))
        parts.emplace_back(c.at("weight").get<double>(), symbolic_from_json(c.at("measure"), name));
      return SymbolicMeasure::mixture(std::move(parts));
    }
    fail(ErrorKind::parse, name + ": unknown op \"" + op + "\"");
  });
}

inline json to_json(const SymbolicMeasure& s) {
  using Op = SymbolicMeasure::Op;
  switch (s.op()) {
    case Op::dirac: {
      json j = to_json(s.combination().measure());
      j["op"] = "dirac";
      return j;
    }
    case Op::invariant: return {{"op", "invariant"}, {"ifs", to_json(s.system())}};
    case Op::convolve:
      return {{"op", "convolve"}, {"args", {to_json(s.children()[0]), to_json(s.children()[1])}}};
    case Op::scale: return {{"op", "scale"}, {"beta", s.beta()}, {"arg", to_json(s.children()[0])}};
    case Op::translate: return {{"op", "translate"}, {"x", s.shift()}, {"arg", to_json(s.children()[0])}};
    case Op::mixture: {
      json parts = json::array();
      for (std::size_t i = 0; i < s.children().size(); ++i)
        parts.push_back({{"weight", s.weights()[i]}, {"measure", to_json(s.children()[i])}});
      return {{"op", "mixture"}, {"components", parts}};
    }
  }
  return {};
}

inline SymbolicMeasure read_symbolic_json(const std::string& path) {
  return symbolic_from_json(read_json_file(path), path);
}

inline json to_json(const CertifiedDims& dims) {
  json j;
  j["r"] = dims.r;
  j["lower_dim"] = dims.lower_dim ? json(*dims.lower_dim) : json(nullptr);
  j["quant_dim"] = dims.quant_dim ? json(*dims.quant_dim) : json(nullptr);
  j["lower_certificate"] = dims.lower_certificate;
  j["quant_certificate"] = dims.quant_certificate;
  j["certificate"] = dims.certificate();
  return j;
}

inline json to_json(const GLSolution& sol) {
  return {{"D", sol.value}, {"residual", sol.residual}, {"x", sol.x}, {"bracket", {sol.lo, sol.hi}}};
}

inline json to_json(const ScaleGrid& g) {
  return {{"r_min", g.r_min}, {"r_max", g.r_max}, {"levels", g.levels}, {"ratio_floor", g.ratio_floor}};
}

}  // namespace fracdim

#endif  // FRACDIM_IO_HPP
