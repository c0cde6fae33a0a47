#include "relspec/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace relspec::io {

namespace {

cplx entry(const json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InputError(where + ": expected a number or [re, im]");
}

Mat matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw InputError(where + ": expected a non-empty list of rows");
  }
  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(rows[0].size());
  Mat out(m, n);
  for (Index i = 0; i < m; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw InputError(where + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (Index k = 0; k < n; ++k) {
      out(i, k) = entry(row[static_cast<std::size_t>(k)], where);
    }
  }
  return out;
}

Index positive(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    throw InputError(std::string("relation: '") + key + "' must be a positive integer");
  }
  return j[key].get<Index>();
}

LaurentPolynomial coefficient_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object of coefficients");
  std::map<int, cplx> c;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size()) throw InputError(where + ": coefficient key '" + key + "' is not an integer");
    c[k] += entry(value, where);
  }
  return LaurentPolynomial(std::move(c));
}

json coefficients_json(const LaurentPolynomial& p) {
  json out = json::object();
  for (const auto& [k, c] : p.coeffs()) out[std::to_string(k)] = complex_to_json(c);
  return out;
}

SparseVec sparse(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of [index, re, im]");
  SparseVec v;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() ||
        !e[2].is_number()) {
      throw InputError(where + ": entries must be [index, re, im]");
    }
    v[e[0].get<std::int64_t>()] += cplx(e[1].get<double>(), e[2].get<double>());
  }
  return v;
}

json sparse_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& [k, x] : v) out.push_back({k, x.real(), x.imag()});
  return out;
}

std::vector<SparseVec> sparse_list(const json& j, const char* key) {
  std::vector<SparseVec> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw InputError(std::string("model: '") + key + "' must be a list");
  for (const auto& e : j[key]) out.push_back(sparse(e, key));
  return out;
}

json count_json(const Count& c) {
  if (c.finite()) return c.value;
  return to_string(c);
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

Relation relation_from_json(const json& j, double tol) {
  if (!j.is_object()) throw InputError("relation: expected a JSON object");
  const Index n = positive(j, "dim_x");
  const Index m = positive(j, "dim_y");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InputError("relation: missing 'kind'");
  if (!j.contains("data")) throw InputError("relation: missing 'data'");
  const std::string kind = j["kind"].get<std::string>();
  const json& data = j["data"];
  if (kind == "operator") {
    const Mat a = matrix(data, "operator data");
    if (a.rows() != m || a.cols() != n) {
      throw InputError("operator data must be dim_y x dim_x = " + std::to_string(m) + "x" +
                       std::to_string(n));
    }
    return Relation::from_operator(a, tol);
  }
  if (kind == "pencil") {
    if (!data.is_array() || data.size() != 2) throw InputError("pencil data must be [A, B]");
    const Mat a = matrix(data[0], "pencil A");
    const Mat b = matrix(data[1], "pencil B");
    if (a.rows() != m || b.rows() != n) {
      throw InputError("pencil: A needs dim_y rows and B needs dim_x rows");
    }
    return Relation::from_pencil(a, b, tol);
  }
  if (kind == "graph") {
    if (!data.is_array()) throw InputError("graph data must be a list of vectors");
    Mat gens(n + m, static_cast<Index>(data.size()));
    for (std::size_t c = 0; c < data.size(); ++c) {
      const json& v = data[c];
      if (!v.is_array() || static_cast<Index>(v.size()) != n + m) {
        throw InputError("graph generator " + std::to_string(c) + " must have dim_x + dim_y entries");
      }
      for (Index i = 0; i < n + m; ++i) gens(i, static_cast<Index>(c)) = entry(v[i], "graph data");
    }
    return Relation::from_generators(n, m, gens, tol);
  }
  throw InputError("relation: unknown kind '" + kind + "'");
}

json relation_to_json(const Relation& t) {
  json data = json::array();
  const Mat& f = t.graph().frame();
  for (Index c = 0; c < f.cols(); ++c) {
    json v = json::array();
    for (Index i = 0; i < f.rows(); ++i) v.push_back(complex_to_json(f(i, c)));
    data.push_back(std::move(v));
  }
  return {{"dim_x", t.dim_x()}, {"dim_y", t.dim_y()}, {"kind", "graph"}, {"data", data}};
}

BandedModel model_from_json(const json& j) {
  if (!j.is_object()) throw InputError("model: expected a JSON object");
  BandedModel m;
  const std::string space = j.value("space", "");
  if (space == "laurent") {
    m.space = Space::laurent;
  } else if (space == "toeplitz") {
    m.space = Space::toeplitz;
  } else {
    throw InputError("model: 'space' must be \"laurent\" or \"toeplitz\"");
  }
  if (!j.contains("symbol")) throw InputError("model: missing 'symbol'");
  const json& s = j["symbol"];
  if (s.is_object() && s.contains("num")) {
    if (!s.contains("den")) throw InputError("model: rational symbol needs 'den'");
    m.symbol = LaurentSymbol(coefficient_map(s["num"], "symbol num"), coefficient_map(s["den"], "symbol den"));
  } else {
    m.symbol = LaurentSymbol(coefficient_map(s, "symbol"));
  }
  if (j.contains("perturbation")) {
    if (!j["perturbation"].is_array()) throw InputError("model: 'perturbation' must be a list");
    for (const auto& p : j["perturbation"]) {
      if (!p.is_object() || !p.contains("u") || !p.contains("v")) {
        throw InputError("model: perturbation entries need 'u' and 'v'");
      }
      m.perturbation.push_back({sparse(p["u"], "perturbation u"), sparse(p["v"], "perturbation v")});
    }
  }
  m.mv_part = sparse_list(j, "mv_part");
  m.domain_annihilator = sparse_list(j, "domain_annihilator");
  m.validate();
  return m;
}

json model_to_json(const BandedModel& m) {
  json out;
  out["space"] = m.space == Space::laurent ? "laurent" : "toeplitz";
  if (m.symbol.rational()) {
    out["symbol"] = {{"num", coefficients_json(m.symbol.numerator())},
                     {"den", coefficients_json(m.symbol.denominator())}};
  } else {
    out["symbol"] = coefficients_json(m.symbol.numerator());
  }
  json pert = json::array();
  for (const auto& p : m.perturbation) pert.push_back({{"u", sparse_json(p.u)}, {"v", sparse_json(p.v)}});
  out["perturbation"] = pert;
  json mv = json::array();
  for (const auto& v : m.mv_part) mv.push_back(sparse_json(v));
  out["mv_part"] = mv;
  if (!m.domain_annihilator.empty()) {
    json ann = json::array();
    for (const auto& v : m.domain_annihilator) ann.push_back(sparse_json(v));
    out["domain_annihilator"] = ann;
  }
  return out;
}

json fredholm_to_json(const FredholmData& f) {
  json kappa = f.kappa.finite() ? json(f.kappa.value) : json(to_string(f.kappa));
  return {{"alpha", count_json(f.alpha)},
          {"beta", count_json(f.beta)},
          {"kappa", kappa},
          {"closed_range", f.closed_range},
          {"class", to_string(f.cls)},
          {"generic", f.generic}};
}

json spectrum_to_json(const Spectrum& s) {
  if (s.all_of_C) return "all_of_C";
  json pts = json::array();
  for (const cplx z : s.points) pts.push_back(complex_to_json(z));
  return pts;
}

std::string grid_csv(const RegionGrid& g) {
  std::string out = "re,im,on_curve,winding,component_id,sigma,e1,e2,e2prime,e3,e4,e5\n";
  out.reserve(out.size() + g.points.size() * 64);
  char buf[160];
  for (int j = 0; j < g.ny; ++j) {
    const double im = g.im(j);
    for (int i = 0; i < g.nx; ++i) {
      const GridPoint& p = g.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d,%d,%d,%d,%d,%d,%d,%d,%d\n", g.re(i), im,
                    int(p.on_curve), p.winding, p.component_id, int(p.sigma), int(p.e1), int(p.e2),
                    int(p.e2prime), int(p.e3), int(p.e4), int(p.e5));
      out += buf;
    }
  }
  return out;
}

json grid_summary(const RegionGrid& g) {
  json comps = json::array();
  for (const auto& c : g.components) {
    comps.push_back({{"id", c.id},
                     {"winding", c.winding},
                     {"kappa", c.kappa},
                     {"size", c.size},
                     {"meets_resolvent", c.meets_resolvent},
                     {"resolvent_verified", c.resolvent_verified}});
  }
  json eig = json::array();
  for (const cplx z : g.eigenvalues) eig.push_back(complex_to_json(z));
  return {{"bounds", {g.bounds.re0, g.bounds.re1, g.bounds.im0, g.bounds.im1}},
          {"resolution", {g.nx, g.ny}},
          {"band", g.band},
          {"components", comps},
          {"eigenvalues", eig}};
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (const char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto fail = [&]() -> cplx { throw InputError("cannot parse complex number '" + raw + "'"); };
  if (s.empty()) return fail();
  auto number = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || !std::isfinite(v)) fail();
    return v;
  };
  const char last = s.back();
  if (last != 'i' && last != 'j') return {number(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(s.substr(0, split)), number(s.substr(split))};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw InputError("empty list of complex numbers");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace relspec::io
