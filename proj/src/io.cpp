#include "qbloch/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qbloch/errors.hpp"

namespace qbloch {

namespace {

// Schema reader that records every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<SchemaIssue> issues;

  void fail(const std::string& ptr, const std::string& msg) { issues.push_back({ptr, msg}); }

  const json* field(const json& obj, const std::string& key, const std::string& ptr, bool required = true) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(ptr + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  bool integer(const json& j, const std::string& ptr, std::int64_t& out) {
    if (!j.is_number_integer()) {
      fail(ptr, "expected an integer");
      return false;
    }
    out = j.get<std::int64_t>();
    return true;
  }

  IntVec int_array(const json& j, const std::string& ptr) {
    IntVec out;
    if (!j.is_array()) {
      fail(ptr, "expected an array of integers");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::int64_t v = 0;
      integer(j[i], ptr + "/" + std::to_string(i), v);
      out.push_back(v);
    }
    return out;
  }

  // "p/2", "k" or an integer; returns twice the value.
  std::int64_t half_integer(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return 2 * j.get<std::int64_t>();
    if (!j.is_string()) {
      fail(ptr, "expected a string \"p/2\" or an integer");
      return 0;
    }
    const auto s = j.get<std::string>();
    try {
      std::size_t pos = 0;
      const std::int64_t p = std::stoll(s, &pos);
      if (pos == s.size()) return 2 * p;
      if (s.substr(pos) == "/2") return p;
    } catch (const std::exception&) {
    }
    fail(ptr, "malformed half-integer \"" + s + "\"");
    return 0;
  }

  LinForm form(const json& j, const std::string& ptr) {
    LinForm f;
    if (!j.is_object()) {
      fail(ptr, "expected an object {\"coeffs\", \"constant\"}");
      return f;
    }
    if (const auto* c = field(j, "coeffs", ptr)) f.coeffs = int_array(*c, ptr + "/coeffs");
    if (const auto* c = field(j, "constant", ptr, false)) integer(*c, ptr + "/constant", f.constant);
    return f;
  }

  int sign(const json& j, const std::string& ptr) {
    std::int64_t v = 0;
    if (integer(j, ptr, v) && v != 1 && v != -1) fail(ptr, "expected +1 or -1");
    return static_cast<int>(v);
  }
};

json form_json(const LinForm& f) { return {{"coeffs", f.coeffs}, {"constant", f.constant}}; }

std::string half_string(std::int64_t twice) {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

json head_json(int r, const QuadForm& Q, const LinForm& L, int epsilon) {
  json lin = json::array();
  for (auto v : Q.linear_twice) lin.push_back(half_string(v));
  return {{"r", r}, {"Q", {{"matrix", Q.matrix}, {"linear", lin}}}, {"L", form_json(L)}, {"epsilon", epsilon}};
}

template <class T>
void read_head(Reader& rd, const json& j, T& t) {
  std::int64_t r = 0;
  if (const auto* v = rd.field(j, "r", "")) rd.integer(*v, "/r", r);
  t.r = static_cast<int>(r);
  if (const auto* q = rd.field(j, "Q", "")) {
    if (const auto* m = rd.field(*q, "matrix", "/Q")) {
      if (!m->is_array()) rd.fail("/Q/matrix", "expected an array of rows");
      else
        for (std::size_t i = 0; i < m->size(); ++i)
          t.Q.matrix.push_back(rd.int_array((*m)[i], "/Q/matrix/" + std::to_string(i)));
    }
    if (const auto* l = rd.field(*q, "linear", "/Q")) {
      if (!l->is_array()) rd.fail("/Q/linear", "expected an array");
      else
        for (std::size_t i = 0; i < l->size(); ++i)
          t.Q.linear_twice.push_back(rd.half_integer((*l)[i], "/Q/linear/" + std::to_string(i)));
    }
  }
  if (const auto* l = rd.field(j, "L", "")) t.L = rd.form(*l, "/L");
  if (const auto* e = rd.field(j, "epsilon", "")) t.epsilon = rd.sign(*e, "/epsilon");
}

// Reports reader issues together with semantic ones that are not already
// implied by a reader issue on an enclosing or enclosed pointer.
template <class T>
void validate_all(Reader& rd, const T& t) {
  try {
    t.validate();
  } catch (const SchemaError& e) {
    for (const auto& i : e.issues())
      if (std::none_of(rd.issues.begin(), rd.issues.end(), [&](const SchemaIssue& o) {
            return i.pointer.starts_with(o.pointer) || o.pointer.starts_with(i.pointer);
          }))
        rd.issues.push_back(i);
  }
  if (!rd.issues.empty()) throw SchemaError(rd.issues);
}

}  // namespace

json to_json(const QTerm& t) {
  json j = head_json(t.r, t.Q, t.L, t.epsilon);
  json fs = json::array();
  for (const auto& f : t.factors) fs.push_back({{"A", form_json(f.form)}, {"sign", f.sign}});
  j["factors"] = fs;
  return j;
}

json to_json(const SpecialQTerm& t) {
  json j = head_json(t.r, t.Q, t.L, t.epsilon);
  json qs = json::array();
  for (const auto& b : t.quads)
    qs.push_back({{"B", form_json(b.B)}, {"C", form_json(b.C)}, {"D", form_json(b.D)}, {"E", form_json(b.E)}});
  j["quads"] = qs;
  return j;
}

json to_json(const AnyTerm& t) {
  return std::visit([](const auto& v) { return to_json(v); }, t);
}

AnyTerm term_from_json(const json& j) {
  Reader rd;
  if (!j.is_object()) {
    rd.fail("", "expected a JSON object");
    throw SchemaError(rd.issues);
  }
  if (j.contains("quads")) {
    SpecialQTerm t;
    read_head(rd, j, t);
    const auto& qs = j["quads"];
    if (!qs.is_array()) rd.fail("/quads", "expected an array");
    else
      for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::string p = "/quads/" + std::to_string(i);
        QuadBlock b;
        const auto get = [&](const char* key, LinForm& f) {
          if (const auto* v = rd.field(qs[i], key, p)) f = rd.form(*v, p + "/" + key);
        };
        if (!qs[i].is_object()) rd.fail(p, "expected an object {B, C, D, E}");
        get("B", b.B);
        get("C", b.C);
        get("D", b.D);
        get("E", b.E);
        t.quads.push_back(std::move(b));
      }
    validate_all(rd, t);
    return t;
  }
  QTerm t;
  read_head(rd, j, t);
  if (const auto* fs = rd.field(j, "factors", "")) {
    if (!fs->is_array()) rd.fail("/factors", "expected an array");
    else
      for (std::size_t i = 0; i < fs->size(); ++i) {
        const std::string p = "/factors/" + std::to_string(i);
        Factor f;
        if (const auto* a = rd.field((*fs)[i], "A", p)) f.form = rd.form(*a, p + "/A");
        if (const auto* s = rd.field((*fs)[i], "sign", p)) f.sign = rd.sign(*s, p + "/sign");
        t.factors.push_back(std::move(f));
      }
  }
  validate_all(rd, t);
  return t;
}

AnyTerm parse_qterm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(std::vector<SchemaIssue>{{"", "cannot open " + path.string()}});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::vector<SchemaIssue>{{"", std::string("malformed JSON: ") + e.what()}});
  }
  return term_from_json(j);
}

QTerm as_plain(const AnyTerm& t) {
  if (const auto* q = std::get_if<QTerm>(&t)) return *q;
  return std::get<SpecialQTerm>(t).as_qterm();
}

json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.str()});
  return {{"terms", terms}};
}

LaurentPoly laurent_from_json(const json& j) {
  Reader rd;
  std::vector<std::pair<LaurentPoly::Exponent, BigInt>> terms;
  if (const auto* t = rd.field(j, "terms", "")) {
    if (!t->is_array()) rd.fail("/terms", "expected an array");
    else
      for (std::size_t i = 0; i < t->size(); ++i) {
        const std::string p = "/terms/" + std::to_string(i);
        const auto& e = (*t)[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_string()) {
          rd.fail(p, "expected [exponent, \"coefficient\"]");
          continue;
        }
        try {
          terms.emplace_back(e[0].get<std::int64_t>(), BigInt(e[1].get<std::string>()));
        } catch (const std::exception&) {
          rd.fail(p + "/1", "malformed integer");
        }
      }
  } else if (!j.is_object()) {
    rd.fail("", "expected an object");
  }
  if (!rd.issues.empty()) throw SchemaError(rd.issues);
  return LaurentPoly::from_terms(terms);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CriticalPoint& cp) {
  json u = json::array(), z = json::array();
  for (const auto& v : cp.u) u.push_back(to_json(v));
  for (const auto& v : cp.z) z.push_back(to_json(v));
  return {{"u", u},
          {"z", z},
          {"residual_log", cp.residual_log},
          {"residual_mult", cp.residual_mult},
          {"branch_A", cp.branch_A},
          {"branch_L", cp.branch_L},
          {"jacobian_singular", cp.jacobian_singular},
          {"log_eps", to_json(cp.log_eps())}};
}

json to_json(const ExtBlochElement& e) {
  json a = json::array();
  for (const auto& [w, m] : e.terms) a.push_back({{"z", to_json(w.z)}, {"p", w.p}, {"q", w.q}, {"mult", m}});
  return a;
}

json to_json(const BlochElement& e) {
  json a = json::array();
  for (const auto& [z, m] : e.terms) a.push_back({{"z", to_json(z)}, {"mult", m}});
  return a;
}

json to_json(const ModZ2Value& v) {
  return {{"value", to_json(v.representative)}, {"canonical", to_json(v.canonical())}, {"modulo", "4pi^2 Z"}};
}

json to_json(const ModZ1Value& v) {
  return {{"value", to_json(v.representative)}, {"canonical", to_json(v.canonical())}, {"modulo", "2pi i Z"}};
}

json to_json(const CVSet& s) {
  json vals = json::array(), mods = json::array();
  for (const auto& v : s.values) {
    vals.push_back(to_json(v));
    mods.push_back(std::abs(v));
  }
  return {{"values", vals}, {"moduli", mods}, {"tol", s.tol}};
}

json to_json(const SingularityEstimate& s) {
  json poles = json::array(), diag = json::object();
  for (const auto& p : s.pade_poles) poles.push_back(to_json(p));
  for (const auto& [k, v] : s.diagnostics) diag[k] = v;
  return {{"growth_rate", s.growth_rate},
          {"radius", s.radius},
          {"poly_exponent", s.poly_exponent},
          {"pade_poles", poles},
          {"diagnostics", diag}};
}

json to_json(const ConjectureReport& r) {
  json dist = json::array();
  for (const auto& [p, d] : r.pole_distances) dist.push_back({{"pole", to_json(p)}, {"distance", d}});
  return {{"literal_cv", to_json(r.literal_cv)},
          {"diagonal_cv", to_json(r.diagonal_cv)},
          {"estimate", to_json(r.estimate)},
          {"min_cv_modulus", r.min_cv_modulus},
          {"radius_rel_error", r.radius_rel_error},
          {"pole_distances", dist},
          {"verdict", r.verdict},
          {"notes", r.notes}};
}

std::string to_csv(const SeriesData& s) {
  std::ostringstream os;
  os.precision(17);
  os << "n,re,im,log_abs,growth_estimate\n";
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
    const cplx c = s.coeffs[n];
    const double la = std::log(std::abs(c));
    os << n << ',' << c.real() << ',' << c.imag() << ',';
    if (std::isfinite(la)) os << la;
    os << ',';
    if (n > 0) {
      const double prev = std::log(std::abs(s.coeffs[n - 1]));
      if (std::isfinite(la) && std::isfinite(prev)) os << la - prev;
    }
    os << '\n';
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.parent_path() / (path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qbloch
