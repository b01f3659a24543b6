#include "mfchern/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mfc {

using nlohmann::json;

// ---- expressions ------------------------------------------------------------------

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& s, RingPtr r) : s_(s), r_(std::move(r)) {}

  LocalFrac parse() {
    LocalFrac v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LocalFrac expr() {
    LocalFrac v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  LocalFrac term() {
    LocalFrac v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        LocalFrac d = unary();
        LocalFrac inv;
        if (!d.invert_unit(inv)) fail("division by " + d.str() + ", which is not a unit of " + r_->name);
        v = v * inv;
      } else {
        return v;
      }
    }
  }
  LocalFrac unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  LocalFrac power() {
    LocalFrac base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    int k = std::stoi(s_.substr(start, pos_ - start));
    if (neg) {
      LocalFrac inv;
      if (!base.invert_unit(inv)) fail("negative power of a non-unit");
      base = inv;
    }
    LocalFrac out = LocalFrac::constant(r_, 1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
  }
  LocalFrac atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      LocalFrac v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return LocalFrac::constant(r_, Rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      for (int k = 0; k < r_->nvars(); ++k)
        if (r_->vars[k] == id) return LocalFrac::variable(r_, k);
      fail("unknown variable " + id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
  RingPtr r_;
};

}  // namespace

LocalFrac parse_expr(const std::string& text, const RingPtr& r) { return ExprParser(text, r).parse(); }

// ---- config document -----------------------------------------------------------------

namespace {

struct Loader {
  const json& root;

  const json& need(const json& j, const std::string& key, const std::string& where) const {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(where, "missing \"" + key + "\"");
    return j.at(key);
  }
  static const json& array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array");
    return j;
  }
  static std::string str(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ConfigError(where, "expected an expression string");
  }
  static int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
    return j.get<int>();
  }
  static LocalFrac expr(const json& j, const RingPtr& r, const std::string& where) {
    try {
      return parse_expr(str(j, where), r);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where, e.what());
    }
  }
  static Poly poly(const json& j, const std::vector<std::string>& vars, const std::string& where) {
    LocalFrac f = expr(j, make_ring("poly", vars), where);
    return f.num();
  }
  static FracMatrix matrix(const json& j, const RingPtr& r, int rows, int cols, const std::string& where) {
    array(j, where);
    if (static_cast<int>(j.size()) != rows) throw ConfigError(where, "expected " + std::to_string(rows) + " rows");
    FracMatrix m = frac_zero(r, rows, cols);
    for (int a = 0; a < rows; ++a) {
      std::string wa = where + "/" + std::to_string(a);
      array(j[a], wa);
      if (static_cast<int>(j[a].size()) != cols) throw ConfigError(wa, "expected " + std::to_string(cols) + " columns");
      for (int b = 0; b < cols; ++b) m(a, b) = expr(j[a][b], r, wa + "/" + std::to_string(b));
    }
    return m;
  }

  SchemePtr scheme() const {
    const json& s = need(root, "scheme", "");
    SchemeSpec spec;
    std::string g = s.value("grading", "Z2");
    if (g == "Z") spec.grading = Grading::Z;
    else if (g == "Z2") spec.grading = Grading::Z2;
    else throw ConfigError("/scheme/grading", "expected \"Z\" or \"Z2\"");
    const json& patches = array(need(s, "patches", "/scheme"), "/scheme/patches");
    if (patches.empty()) throw ConfigError("/scheme/patches", "at least one patch is required");
    int maxvars = 0;
    for (size_t i = 0; i < patches.size(); ++i) {
      std::string w = "/scheme/patches/" + std::to_string(i);
      PatchSpec p;
      p.name = patches[i].value("name", "U" + std::to_string(i));
      for (const auto& v : array(need(patches[i], "variables", w), w + "/variables")) p.vars.push_back(v.get<std::string>());
      if (patches[i].contains("denominators")) {
        const json& d = array(patches[i]["denominators"], w + "/denominators");
        for (size_t k = 0; k < d.size(); ++k)
          p.denominators.push_back(poly(d[k], p.vars, w + "/denominators/" + std::to_string(k)));
      }
      maxvars = std::max(maxvars, static_cast<int>(p.vars.size()));
      spec.patches.push_back(std::move(p));
    }
    spec.dimension = s.contains("dimension") ? integer(s["dimension"], "/scheme/dimension") : maxvars;
    if (s.contains("gluings")) {
      const json& gl = array(s["gluings"], "/scheme/gluings");
      for (size_t k = 0; k < gl.size(); ++k) {
        std::string w = "/scheme/gluings/" + std::to_string(k);
        const json& pair = array(need(gl[k], "pair", w), w + "/pair");
        GluingSpec gs;
        gs.i = integer(pair.at(0), w + "/pair/0");
        gs.j = integer(pair.at(1), w + "/pair/1");
        int n = static_cast<int>(spec.patches.size());
        if (gs.i < 0 || gs.j < 0 || gs.i >= n || gs.j >= n || gs.i >= gs.j)
          throw ConfigError(w + "/pair", "expected patch indices i < j");
        const auto& vi = spec.patches[gs.i].vars;
        if (gl[k].contains("denominators")) {
          const json& d = array(gl[k]["denominators"], w + "/denominators");
          for (size_t m = 0; m < d.size(); ++m)
            gs.denominators.push_back(poly(d[m], vi, w + "/denominators/" + std::to_string(m)));
        }
        RingPtr r = make_ring("gluing", vi, gs.denominators);
        const json& im = array(need(gl[k], "images", w), w + "/images");
        if (im.size() != spec.patches[gs.j].vars.size())
          throw ConfigError(w + "/images", "expected one image per variable of " + spec.patches[gs.j].name);
        for (size_t m = 0; m < im.size(); ++m) {
          LocalFrac f = expr(im[m], r, w + "/images/" + std::to_string(m));
          gs.images.push_back({f.num(), f.den()});
        }
        spec.gluings.push_back(std::move(gs));
      }
    }
    const json& pot = need(s, "potential", "/scheme");
    for (size_t i = 0; i < spec.patches.size(); ++i) {
      std::string w = "/scheme/potential/" + std::to_string(i);
      if (!pot.is_array() || i >= pot.size())
        throw ConfigError("/scheme/potential", "missing potential for patch " + spec.patches[i].name);
      spec.potential.push_back(poly(pot[i], spec.patches[i].vars, w));
    }
    try {
      return std::make_shared<const CoveredScheme>(CoveredScheme::build(spec));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/scheme", e.what());
    } catch (const std::domain_error& e) {
      throw ConfigError("/scheme", e.what());
    }
  }

  FracMatrix invert_transition(const FracMatrix& m, const std::string& where) const {
    FracMatrix inv = frac_zero(m(0, 0).ring(), m.rows, m.cols);
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b) {
        if (a == b) {
          if (!m(a, a).invert_unit(inv(a, a))) throw ConfigError(where, "give \"inverse\": diagonal entry is not a unit");
        } else if (!m(a, b).is_zero()) {
          throw ConfigError(where, "give \"inverse\" for a non-diagonal transition");
        }
      }
    return inv;
  }

  BundlePtr bundle(const SchemePtr& X, const std::vector<int>& degrees, const json& b) const {
    std::map<std::pair<int, int>, FracMatrix> fwd, inv;
    int r = static_cast<int>(degrees.size());
    if (b.contains("transitions")) {
      const json& tr = array(b["transitions"], "/bundle/transitions");
      for (size_t k = 0; k < tr.size(); ++k) {
        std::string w = "/bundle/transitions/" + std::to_string(k);
        const json& pair = array(need(tr[k], "pair", w), w + "/pair");
        Tuple t{integer(pair.at(0), w + "/pair/0"), integer(pair.at(1), w + "/pair/1")};
        if (!X->has_tuple(t)) throw ConfigError(w + "/pair", "no such intersection");
        const RingPtr& ring = X->ring(t);
        FracMatrix m = matrix(need(tr[k], "matrix", w), ring, r, r, w + "/matrix");
        fwd[{t[0], t[1]}] = m;
        inv[{t[0], t[1]}] =
            tr[k].contains("inverse") ? matrix(tr[k]["inverse"], ring, r, r, w + "/inverse") : invert_transition(m, w);
      }
    }
    for (const Tuple& t : X->tuples(1))
      if (!fwd.count({t[0], t[1]})) {
        fwd[{t[0], t[1]}] = frac_identity(X->ring(t), r);
        inv[{t[0], t[1]}] = frac_identity(X->ring(t), r);
      }
    auto E = std::make_shared<const VectorBundle>(X, degrees, fwd, inv);
    auto bad = E->check();
    if (!bad.empty()) throw ConfigError("/bundle", bad.front());
    return E;
  }

  MFPtr mf(const SchemePtr& X) const {
    const json& m = need(root, "mf", "");
    if (m.contains("koszul")) {
      const json& k = m["koszul"];
      std::vector<Poly> a, b;
      const auto& vars = X->ring({0})->vars;
      const json& ja = array(need(k, "a", "/mf/koszul"), "/mf/koszul/a");
      const json& jb = array(need(k, "b", "/mf/koszul"), "/mf/koszul/b");
      for (size_t i = 0; i < ja.size(); ++i) a.push_back(poly(ja[i], vars, "/mf/koszul/a/" + std::to_string(i)));
      for (size_t i = 0; i < jb.size(); ++i) b.push_back(poly(jb[i], vars, "/mf/koszul/b/" + std::to_string(i)));
      if (a.size() != b.size()) throw ConfigError("/mf/koszul", "a and b must have the same length");
      MFPtr P;
      try {
        P = koszul_mf_global(X, a, b);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/mf/koszul", e.what());
      }
      auto bad = check_mf(*P);
      if (!bad.empty()) throw ConfigError("/mf/koszul", bad.front());
      return P;
    }
    const json& bj = root.contains("bundle") ? root["bundle"] : json::object();
    std::vector<int> degrees;
    for (const auto& d : array(need(bj, "degrees", "/bundle"), "/bundle/degrees")) degrees.push_back(d.get<int>());
    if (degrees.empty()) throw ConfigError("/bundle/degrees", "rank must be positive");
    BundlePtr E = bundle(X, degrees, bj);
    int r = E->rank();
    const json& dl = array(need(m, "delta", "/mf"), "/mf/delta");
    std::vector<FracMatrix> delta;
    for (int i = 0; i < X->num_patches(); ++i) {
      if (i >= static_cast<int>(dl.size())) throw ConfigError("/mf/delta", "missing δ for patch " + X->patch_name(i));
      delta.push_back(matrix(dl[i], X->ring({i}), r, r, "/mf/delta/" + std::to_string(i)));
    }
    MFPtr P = make_mf(E, delta);
    auto bad = check_mf(*P);
    if (!bad.empty()) throw ConfigError("/mf", bad.front());
    return P;
  }

  Connection connection(const MFPtr& P) const {
    const json& c = root["connection"];
    Connection out = default_connection(P->bundle);
    const CoveredScheme& X = P->X();
    if (c.contains("patches")) {
      const json& ps = array(c["patches"], "/connection/patches");
      int r = P->rank();
      for (int i = 0; i < X.num_patches() && i < static_cast<int>(ps.size()); ++i) {
        std::string w = "/connection/patches/" + std::to_string(i);
        const RingPtr& ring = X.ring({i});
        array(ps[i], w);
        if (static_cast<int>(ps[i].size()) != r) throw ConfigError(w, "expected " + std::to_string(r) + " rows");
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) {
            std::string we = w + "/" + std::to_string(a) + "/" + std::to_string(b);
            const json& e = ps[i][a].at(b);
            if (!e.is_object()) throw ConfigError(we, "expected an object {variable: coefficient} of dx terms");
            DifferentialForm f(ring);
            for (const auto& [var, coef] : e.items()) {
              int v = -1;
              for (int k = 0; k < ring->nvars(); ++k)
                if (ring->vars[k] == var) v = k;
              if (v < 0) throw ConfigError(we, "unknown variable " + var);
              f += DifferentialForm::dx(ring, v).times(expr(coef, ring, we + "/" + var));
            }
            out.C[i](a, b) = f;
          }
      }
    }
    return out;
  }

  std::shared_ptr<const GroupAction> group(const SchemePtr& X) const {
    const json& g = root["group"];
    auto G = std::make_shared<GroupAction>();
    for (const auto& n : array(need(g, "elements", "/group"), "/group/elements")) G->names.push_back(n.get<std::string>());
    G->table = need(g, "table", "/group").get<std::vector<std::vector<int>>>();
    const json& ms = array(need(g, "matrices", "/group"), "/group/matrices");
    for (size_t e = 0; e < ms.size(); ++e) {
      std::vector<std::vector<std::vector<Rational>>> per_patch;
      for (size_t i = 0; i < ms[e].size(); ++i) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : ms[e][i]) {
          std::vector<Rational> rr;
          for (const auto& v : row) {
            std::string w = "/group/matrices/" + std::to_string(e) + "/" + std::to_string(i);
            LocalFrac f = expr(v, make_ring("Q", {}), w);
            rr.push_back(f.constant_value());
          }
          rows.push_back(std::move(rr));
        }
        per_patch.push_back(std::move(rows));
      }
      G->matrices.push_back(std::move(per_patch));
    }
    try {
      G->validate(*X);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/group", e.what());
    }
    return G;
  }

  EquivariantMF equivariant(const MFPtr& P, const std::shared_ptr<const GroupAction>& G) const {
    const json& phi = array(need(root["equivariant"], "phi", "/equivariant"), "/equivariant/phi");
    EquivariantMF E{P, G, {}};
    const CoveredScheme& X = P->X();
    if (static_cast<int>(phi.size()) != G->order()) throw ConfigError("/equivariant/phi", "one entry per group element");
    for (int g = 0; g < G->order(); ++g) {
      std::vector<FracMatrix> per_patch;
      for (int i = 0; i < X.num_patches(); ++i) {
        std::string w = "/equivariant/phi/" + std::to_string(g) + "/" + std::to_string(i);
        if (i >= static_cast<int>(phi[g].size())) throw ConfigError(w, "missing φ for patch " + X.patch_name(i));
        per_patch.push_back(matrix(phi[g][i], X.ring({i}), P->rank(), P->rank(), w));
      }
      E.phi.push_back(std::move(per_patch));
    }
    auto bad = E.check();
    if (!bad.empty()) throw ConfigError("/equivariant", bad.front());
    return E;
  }

  SupportSplit support(const CoveredScheme& X) const {
    const json& s = root["support"];
    SupportSplit sp;
    sp.I1 = need(s, "I1", "/support").get<std::vector<int>>();
    sp.I2 = need(s, "I2", "/support").get<std::vector<int>>();
    try {
      sp.validate(X);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/support", e.what());
    }
    return sp;
  }

  CechCochain kappa(const MFPtr& P) const {
    const json& ps = array(need(root["kappa"], "patches", "/kappa"), "/kappa/patches");
    CechCochain k(P->bundle, P->bundle, 0);
    const CoveredScheme& X = P->X();
    for (int i = 0; i < X.num_patches(); ++i) {
      std::string w = "/kappa/patches/" + std::to_string(i);
      if (i >= static_cast<int>(ps.size())) throw ConfigError(w, "missing κ for patch " + X.patch_name(i));
      FracMatrix m = matrix(ps[i], X.ring({i}), P->rank(), P->rank(), w);
      for (int a = 0; a < m.rows; ++a)
        for (int b = 0; b < m.cols; ++b)
          if (!m(a, b).is_zero()) k.add({i}, a, b, DifferentialForm::scalar(m(a, b)));
    }
    return k;
  }
};

}  // namespace

Connection JobInput::connection_or_default() const { return connection ? *connection : default_connection(P->bundle); }

JobInput load_job(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("not valid JSON: ") + e.what());
  }
  Loader L{root};
  JobInput job;
  try {
    job.X = L.scheme();
    if (root.contains("mf")) job.P = L.mf(job.X);
    if (job.P && root.contains("connection")) job.connection = L.connection(job.P);
    if (root.contains("group")) job.group = L.group(job.X);
    if (job.P && job.group && root.contains("equivariant")) job.equivariant = L.equivariant(job.P, job.group);
    if (job.equivariant && job.connection && root["connection"].value("average", false))
      job.connection = average_connection(*job.connection, *job.equivariant);
    if (root.contains("support")) job.support = L.support(*job.X);
    if (job.P && root.contains("kappa")) job.kappa = L.kappa(job.P);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  return job;
}

JobInput load_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_job(ss.str());
}

}  // namespace mfc
