#include "nfold/io.hpp"

#include <limits>

namespace nfold::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw ParseError(path + ": " + message); }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, std::string_view key) { return path + "." + std::string(key); }

const json& field(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(dot(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

const json& array_of_size(const json& v, std::size_t n, const std::string& path) {
  array(v, path);
  if (v.size() != n) fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
  return v;
}

std::size_t count_from_json(const json& v, const std::string& path) {
  const Integer x = integer_from_json(v, path);
  if (x.sign() < 0) fail(path, "expected a nonnegative count");
  if (!x.fits_int64() || x > Integer(std::int64_t{1} << 40)) fail(path, "count is too large");
  return static_cast<std::size_t>(x.to_int64());
}

std::size_t positive_count(const json& v, const std::string& path) {
  const std::size_t n = count_from_json(v, path);
  if (n == 0) fail(path, "expected a positive count");
  return n;
}

IntVector vector_of_size(const json& v, std::size_t n, const std::string& path) {
  array_of_size(v, n, path);
  return vector_from_json(v, path);
}

std::vector<IntVector> rows_from_json(const json& v, std::size_t rows, std::size_t cols, const std::string& path) {
  array_of_size(v, rows, path);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rows; ++i) out.push_back(vector_of_size(v[i], cols, at(path, i)));
  return out;
}

// Rows given as arrays; `cols` is required to size matrices without rows.
IntMatrix matrix_rows_from_json(const json& v, std::optional<std::size_t> cols, const std::string& path) {
  array(v, path);
  if (!cols) {
    if (v.empty()) fail(path, "column count is needed for a matrix without rows");
    cols = array(v[0], at(path, 0)).size();
  }
  IntMatrix out(v.size(), *cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const IntVector row = vector_of_size(v[i], *cols, at(path, i));
    for (std::size_t j = 0; j < *cols; ++j) out(i, j) = row[j];
  }
  return out;
}

IntMatrix matrix_from_json(const json& v, const std::string& path) {
  std::optional<std::size_t> cols;
  if (const json* c = optional_field(v, "cols", path)) cols = count_from_json(*c, dot(path, "cols"));
  return matrix_rows_from_json(field(v, "entries", path), cols, dot(path, "entries"));
}

Bimatrix bimatrix_from_json(const json& v, const std::string& path) {
  const std::size_t t = count_from_json(field(v, "t", path), dot(path, "t"));
  IntMatrix top = matrix_rows_from_json(field(v, "top", path), t, dot(path, "top"));
  IntMatrix bottom = matrix_rows_from_json(field(v, "bottom", path), t, dot(path, "bottom"));
  return Bimatrix(std::move(top), std::move(bottom));
}

Digraph digraph_from_json(const json& v, const std::string& path) {
  const std::size_t s = count_from_json(field(v, "vertices", path), dot(path, "vertices"));
  const std::string epath = dot(path, "edges");
  const json& edges = array(field(v, "edges", path), epath);
  std::vector<Edge> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const json& pair = array_of_size(edges[e], 2, at(epath, e));
    const std::size_t tail = count_from_json(pair[0], at(at(epath, e), 0));
    const std::size_t head = count_from_json(pair[1], at(at(epath, e), 1));
    if (tail < 1 || tail > s) fail(at(at(epath, e), 0), "vertex out of range 1.." + std::to_string(s));
    if (head < 1 || head > s) fail(at(at(epath, e), 1), "vertex out of range 1.." + std::to_string(s));
    if (tail == head) fail(at(epath, e), "self-loops are not allowed");
    out.push_back({tail - 1, head - 1});
  }
  return Digraph(s, std::move(out));
}

Term term_from_json(const json& v, const std::string& path) {
  const json& kind_field = field(v, "kind", path);
  if (!kind_field.is_string()) fail(dot(path, "kind"), "expected a string");
  const std::string kind = kind_field.get<std::string>();
  Term out;
  try {
    if (kind == "linear") {
      out = Term::linear(integer_from_json(field(v, "coefficient", path), dot(path, "coefficient")));
    } else if (kind == "abs_power") {
      const std::size_t e = count_from_json(field(v, "exponent", path), dot(path, "exponent"));
      if (e < 1 || e > std::numeric_limits<unsigned>::max()) fail(dot(path, "exponent"), "exponent must be >= 1");
      out = Term::abs_power(integer_from_json(field(v, "weight", path), dot(path, "weight")),
                            static_cast<unsigned>(e));
    } else if (kind == "piecewise_linear") {
      const IntVector bp = vector_from_json(field(v, "breakpoints", path), dot(path, "breakpoints"));
      const IntVector sl = vector_from_json(field(v, "slopes", path), dot(path, "slopes"));
      out = Term::piecewise_linear(integer_from_json(field(v, "value_at_zero", path), dot(path, "value_at_zero")),
                                   bp.entries(), sl.entries());
    } else {
      fail(dot(path, "kind"), "unknown term kind '" + kind + "' (expected linear, abs_power or piecewise_linear)");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  if (const json* d = optional_field(v, "direction", path)) {
    const Integer dir = integer_from_json(*d, dot(path, "direction"));
    if (dir != 1 && dir != -1) fail(dot(path, "direction"), "expected 1 or -1");
    out.direction = static_cast<int>(dir.to_int64());
  }
  if (const json* o = optional_field(v, "offset", path)) out.offset = integer_from_json(*o, dot(path, "offset"));
  return out;
}

std::vector<Term> terms_from_json(const json& v, std::size_t n, const std::string& path) {
  array_of_size(v, n, path);
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(term_from_json(v[i], at(path, i)));
  return out;
}

// Missing cost lists default to zero terms.
std::vector<Term> optional_terms(const json& obj, std::string_view key, std::size_t n, const std::string& path) {
  if (const json* v = optional_field(obj, key, path)) return terms_from_json(*v, n, dot(path, key));
  return std::vector<Term>(n);
}

std::vector<std::optional<Integer>> bound_vector_from_json(const json& v, std::size_t n, bool lower,
                                                           const std::string& path) {
  array_of_size(v, n, path);
  std::vector<std::optional<Integer>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& e = v[i];
    if (e.is_null()) continue;
    if (e.is_string()) {
      const std::string s = e.get<std::string>();
      if (s == "-inf" || s == "inf" || s == "+inf") {
        if ((s == "-inf") != lower) fail(at(path, i), "infinite bound points the wrong way");
        continue;
      }
    }
    out[i] = integer_from_json(e, at(path, i));
  }
  return out;
}

Bounds bounds_from_json(const json& obj, std::string_view lower_key, std::string_view upper_key, std::size_t n,
                        const std::string& path) {
  Bounds b = Bounds::unbounded(n);
  if (const json* v = optional_field(obj, lower_key, path)) b.lower = bound_vector_from_json(*v, n, true, dot(path, lower_key));
  if (const json* v = optional_field(obj, upper_key, path)) b.upper = bound_vector_from_json(*v, n, false, dot(path, upper_key));
  return b;
}

SeparableConvexObjective objective(std::vector<Term> terms, const std::string& path) {
  try {
    return SeparableConvexObjective(std::move(terms));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

NFoldProgramInstance nfold_program_from_json(const json& v, const std::string& path) {
  Bimatrix a = bimatrix_from_json(field(v, "bimatrix", path), dot(path, "bimatrix"));
  const std::size_t n = positive_count(field(v, "n", path), dot(path, "n"));
  const std::size_t nt = n * a.t();
  IntVector rhs = vector_of_size(field(v, "rhs", path), a.r() + n * a.s(), dot(path, "rhs"));
  Bounds bounds = bounds_from_json(v, "lower", "upper", nt, path);
  SeparableConvexObjective f = objective(optional_terms(v, "objective", nt, path), dot(path, "objective"));
  return {NFoldProgram{std::move(a), n, std::move(rhs), std::move(bounds)}, std::move(f)};
}

GeneralizedNFoldProgram generalized_from_json(const json& v, const std::string& path) {
  GeneralizedNFoldProgram p;
  p.a = bimatrix_from_json(field(v, "a", path), dot(path, "a"));
  p.w = bimatrix_from_json(field(v, "w", path), dot(path, "w"));
  if (p.a.t() != p.w.t()) fail(dot(path, "w.t"), "must equal a.t");
  p.n = positive_count(field(v, "n", path), dot(path, "n"));
  p.rhs = vector_of_size(field(v, "rhs", path), p.a.r() + p.n * p.a.s(), dot(path, "rhs"));
  p.bounds = bounds_from_json(v, "lower", "upper", p.variable_count(), path);
  p.w_bounds = bounds_from_json(v, "w_lower", "w_upper", p.load_count(), path);
  p.f = objective(optional_terms(v, "f", p.load_count(), path), dot(path, "f"));
  p.g = objective(optional_terms(v, "g", p.variable_count(), path), dot(path, "g"));
  return p;
}

TransshipmentInstance transshipment_from_json(const json& v, const std::string& path) {
  TransshipmentInstance inst;
  inst.graph = digraph_from_json(field(v, "digraph", path), dot(path, "digraph"));
  inst.commodities = positive_count(field(v, "commodities", path), dot(path, "commodities"));
  const std::size_t s = inst.graph.vertex_count(), t = inst.graph.edge_count(), l = inst.commodities;
  inst.demands = rows_from_json(field(v, "demands", path), l, s, dot(path, "demands"));
  inst.capacities = vector_of_size(field(v, "capacities", path), t, dot(path, "capacities"));
  inst.edge_costs = optional_terms(v, "edge_costs", t, path);
  if (const json* c = optional_field(v, "commodity_costs", path)) {
    const std::string cpath = dot(path, "commodity_costs");
    array_of_size(*c, l, cpath);
    for (std::size_t k = 0; k < l; ++k) inst.commodity_costs.push_back(terms_from_json((*c)[k], t, at(cpath, k)));
  } else {
    inst.commodity_costs.assign(l, std::vector<Term>(t));
  }
  try {
    inst.validate();
  } catch (const InvalidInstance& e) {
    fail(path, e.what());
  }
  return inst;
}

TransportationInstance transportation_from_json(const json& v, const std::string& path) {
  TransportationInstance inst;
  inst.suppliers = positive_count(field(v, "suppliers", path), dot(path, "suppliers"));
  inst.consumers = positive_count(field(v, "consumers", path), dot(path, "consumers"));
  inst.commodities = positive_count(field(v, "commodities", path), dot(path, "commodities"));
  const std::size_t m = inst.suppliers, n = inst.consumers, l = inst.commodities;
  inst.volumes = vector_of_size(field(v, "volumes", path), l, dot(path, "volumes"));
  inst.supplies = rows_from_json(field(v, "supplies", path), m, l, dot(path, "supplies"));
  inst.consumptions = rows_from_json(field(v, "consumptions", path), n, l, dot(path, "consumptions"));
  inst.capacities = rows_from_json(field(v, "capacities", path), m, n, dot(path, "capacities"));
  if (const json* c = optional_field(v, "pair_costs", path)) {
    const std::string cpath = dot(path, "pair_costs");
    array_of_size(*c, m, cpath);
    for (std::size_t i = 0; i < m; ++i) inst.pair_costs.push_back(terms_from_json((*c)[i], n, at(cpath, i)));
  } else {
    inst.pair_costs.assign(m, std::vector<Term>(n));
  }
  if (const json* c = optional_field(v, "commodity_costs", path)) {
    const std::string cpath = dot(path, "commodity_costs");
    array_of_size(*c, n, cpath);
    inst.commodity_costs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      array_of_size((*c)[j], m, at(cpath, j));
      for (std::size_t i = 0; i < m; ++i) {
        inst.commodity_costs[j].push_back(terms_from_json((*c)[j][i], l, at(at(cpath, j), i)));
      }
    }
  } else {
    inst.commodity_costs.assign(n, std::vector<std::vector<Term>>(m, std::vector<Term>(l)));
  }
  try {
    inst.validate();
  } catch (const InvalidInstance& e) {
    fail(path, e.what());
  }
  return inst;
}

// ---------------------------------------------------------------- serialization

json rows_json(const std::vector<IntVector>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

json bimatrix_json(const Bimatrix& a) { return {{"t", a.t()}, {"top", to_json(a.top())}, {"bottom", to_json(a.bottom())}}; }

json digraph_json(const Digraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail + 1, e.head + 1});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

json bound_vector_json(const std::vector<std::optional<Integer>>& b) {
  json out = json::array();
  for (const auto& v : b) out.push_back(v ? to_json(*v) : json(nullptr));
  return out;
}

json terms_json(const std::vector<Term>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back(to_json(t));
  return out;
}

json payload_json(const InstanceData& data) {
  return std::visit(
      [](const auto& d) -> json {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, IntMatrix>) {
          return {{"cols", d.cols()}, {"entries", to_json(d)}};
        } else if constexpr (std::is_same_v<D, Bimatrix>) {
          return bimatrix_json(d);
        } else if constexpr (std::is_same_v<D, NFoldProgramInstance>) {
          // Term JSON is built first: a throw inside a json initializer list leaks.
          json objective = to_json(d.objective);
          return {{"bimatrix", bimatrix_json(d.program.a)},
                  {"n", d.program.n},
                  {"rhs", to_json(d.program.rhs)},
                  {"lower", bound_vector_json(d.program.bounds.lower)},
                  {"upper", bound_vector_json(d.program.bounds.upper)},
                  {"objective", std::move(objective)}};
        } else if constexpr (std::is_same_v<D, GeneralizedNFoldProgram>) {
          json f = to_json(d.f), g = to_json(d.g);
          return {{"a", bimatrix_json(d.a)},
                  {"w", bimatrix_json(d.w)},
                  {"n", d.n},
                  {"rhs", to_json(d.rhs)},
                  {"lower", bound_vector_json(d.bounds.lower)},
                  {"upper", bound_vector_json(d.bounds.upper)},
                  {"w_lower", bound_vector_json(d.w_bounds.lower)},
                  {"w_upper", bound_vector_json(d.w_bounds.upper)},
                  {"f", std::move(f)},
                  {"g", std::move(g)}};
        } else if constexpr (std::is_same_v<D, TransshipmentInstance>) {
          json costs = json::array();
          for (const auto& row : d.commodity_costs) costs.push_back(terms_json(row));
          json edge_costs = terms_json(d.edge_costs);
          return {{"digraph", digraph_json(d.graph)},     {"commodities", d.commodities},
                  {"demands", rows_json(d.demands)},       {"capacities", to_json(d.capacities)},
                  {"edge_costs", std::move(edge_costs)},   {"commodity_costs", std::move(costs)}};
        } else if constexpr (std::is_same_v<D, TransportationInstance>) {
          json pair = json::array();
          for (const auto& row : d.pair_costs) pair.push_back(terms_json(row));
          json costs = json::array();
          for (const auto& per_consumer : d.commodity_costs) {
            json rows = json::array();
            for (const auto& row : per_consumer) rows.push_back(terms_json(row));
            costs.push_back(rows);
          }
          return {{"suppliers", d.suppliers},
                  {"consumers", d.consumers},
                  {"commodities", d.commodities},
                  {"volumes", to_json(d.volumes)},
                  {"supplies", rows_json(d.supplies)},
                  {"consumptions", rows_json(d.consumptions)},
                  {"capacities", rows_json(d.capacities)},
                  {"pair_costs", pair},
                  {"commodity_costs", costs}};
        } else {
          return digraph_json(d);
        }
      },
      data);
}

}  // namespace

std::string_view InstanceFile::kind() const {
  switch (data.index()) {
    case 0: return "matrix";
    case 1: return "bimatrix";
    case 2: return "nfold_program";
    case 3: return "generalized_program";
    case 4: return "transshipment";
    case 5: return "transportation";
    default: return "digraph";
  }
}

Integer integer_from_json(const json& v, const std::string& path) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    try {
      return Integer::from_string(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(path, "'" + v.get<std::string>() + "' is not a decimal integer");
    }
  }
  fail(path, "expected an integer (decimal string or JSON integer)");
}

IntVector vector_from_json(const json& v, const std::string& path) {
  array(v, path);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = integer_from_json(v[i], at(path, i));
  return out;
}

json to_json(const Integer& v) { return v.to_string(); }

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const Term& t) {
  json out = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LinearTerm>) {
          return {{"kind", "linear"}, {"coefficient", to_json(k.coefficient)}};
        } else if constexpr (std::is_same_v<K, AbsPowerTerm>) {
          return {{"kind", "abs_power"}, {"weight", to_json(k.weight)}, {"exponent", k.exponent}};
        } else if constexpr (std::is_same_v<K, PiecewiseLinearTerm>) {
          return {{"kind", "piecewise_linear"},
                  {"value_at_zero", to_json(k.value_at_zero)},
                  {"breakpoints", to_json(IntVector(k.breakpoints))},
                  {"slopes", to_json(IntVector(k.slopes))}};
        } else {
          throw std::invalid_argument("oracle terms cannot be serialized");
        }
      },
      t.kind);
  if (t.direction != 1) out["direction"] = t.direction;
  if (!t.offset.is_zero()) out["offset"] = to_json(t.offset);
  return out;
}

json to_json(const SeparableConvexObjective& f) { return terms_json(f.terms()); }

InstanceFile parse_instance(const json& document) {
  const std::string root = "$";
  InstanceFile out;
  const json& version = field(document, "format_version", root);
  if (!version.is_string()) fail(dot(root, "format_version"), "expected a string");
  out.format_version = version.get<std::string>();
  if (out.format_version != kFormatVersion) {
    fail(dot(root, "format_version"), "unsupported version '" + out.format_version + "'");
  }
  const json& kind_field = field(document, "kind", root);
  if (!kind_field.is_string()) fail(dot(root, "kind"), "expected a string");
  const std::string kind = kind_field.get<std::string>();
  const json& payload = field(document, "payload", root);
  const std::string path = "payload";
  try {
    if (kind == "matrix") {
      out.data = matrix_from_json(payload, path);
    } else if (kind == "bimatrix") {
      out.data = bimatrix_from_json(payload, path);
    } else if (kind == "nfold_program") {
      out.data = nfold_program_from_json(payload, path);
    } else if (kind == "generalized_program") {
      out.data = generalized_from_json(payload, path);
    } else if (kind == "transshipment") {
      out.data = transshipment_from_json(payload, path);
    } else if (kind == "transportation") {
      out.data = transportation_from_json(payload, path);
    } else if (kind == "digraph") {
      out.data = digraph_from_json(payload, path);
    } else {
      fail(dot(root, "kind"), "unknown kind '" + kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return out;
}

InstanceFile read_instance(std::istream& in) {
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: invalid JSON: ") + e.what());
  }
  return parse_instance(document);
}

json serialize_instance(const InstanceFile& file) {
  json payload = payload_json(file.data);
  return {{"format_version", file.format_version}, {"kind", file.kind()}, {"payload", std::move(payload)}};
}

}  // namespace nfold::io
