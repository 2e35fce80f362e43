#pragma once

// Plain-text documents: one directive per line, single spaces, fixed order.
//
//   ainf-document 1
//   kind dg
//   name dual_numbers
//   field Q
//   kmax 2
//   object o
//   gen 1 o o 0
//   gen e o o 0
//   unit o 1*1
//   strict-units
//   op 2 e e = 0
//
// Functor and simplex documents name their categories; a resolver supplies them.

#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/barcobar.hpp"
#include "ainf/category.hpp"
#include "ainf/nerve.hpp"

namespace ainf {

struct DocumentError : std::runtime_error {
  int line = 0, column = 0;
  DocumentError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + (c ? ", column " + std::to_string(c) : std::string()) + ": " +
                           msg),
        line(l),
        column(c) {}
};

struct Document {
  std::string kind;  // dg, ainf, functor, simplex, cocategory
  std::string name;
  Field field;
  PresPtr pres;                           // dg, ainf
  std::shared_ptr<const AInfFunctor> functor;  // functor, simplex
  std::string source_ref, target_ref;     // functor (source, target), simplex (target), cocategory (base)
  int dim = 0;                            // simplex
  int max_len = 0;                        // cocategory
};

using Resolver = std::function<PresPtr(const std::string&)>;

namespace detail {

inline std::string scalar_token(const Scalar& s) {
  return s.modulus() ? s.value().get_num().get_str() : s.value().get_str();
}

inline std::string vec_token(const GradedQuiver& q, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [g, c] : v) s += (s.empty() ? "" : " + ") + scalar_token(c) + "*" + q.gen(g).label;
  return s;
}

// m2 unit rules are all present and nothing else is needed to rebuild them.
inline bool has_strict_unit_rules(const AInfPresentation& a) {
  if (!a.has_units) return false;
  const auto& q = a.quiver;
  for (int x = 0; x < q.num_objects(); ++x)
    if (a.unit_gen(x) < 0) return false;
  for (int g = 0; g < q.num_gens(); ++g) {
    const Vec* l = a.op(2, {a.unit_gen(q.gen(g).tgt), g});
    const Vec* r = a.op(2, {g, a.unit_gen(q.gen(g).src)});
    if (!l || !r || *l != basis_vec(g) || *r != basis_vec(g)) return false;
  }
  return true;
}

inline bool is_unit_rule(const AInfPresentation& a, const Chain& c) {
  if (c.size() != 2) return false;
  return (a.is_unit_gen(c[0]) && a.quiver.gen(c[0]).src == a.quiver.gen(c[1]).tgt) ||
         (a.is_unit_gen(c[1]) && a.quiver.gen(c[1]).tgt == a.quiver.gen(c[0]).src);
}

inline void apply_strict_unit_rules(AInfPresentation& a) {
  const auto& q = a.quiver;
  for (int g = 0; g < q.num_gens(); ++g) {
    a.set_op(2, {a.unit_gen(q.gen(g).tgt), g}, basis_vec(g));
    a.set_op(2, {g, a.unit_gen(q.gen(g).src)}, basis_vec(g));
  }
}

inline void print_components(std::ostream& os, const AInfFunctor& f) {
  const auto& A = f.src->quiver;
  for (int k = 1; k <= f.bound; ++k)
    for (const auto& [c, v] : f.comps[k]) {
      os << "f " << k;
      for (int g : c) os << ' ' << A.gen(g).label;
      os << " = " << vec_token(f.tgt->quiver, v) << '\n';
    }
}

}  // namespace detail

inline std::string print_document(const Document& d) {
  std::ostringstream os;
  os << "ainf-document 1\n";
  os << "kind " << d.kind << '\n';
  os << "name " << d.name << '\n';
  os << "field " << d.field.name() << '\n';
  if (d.kind == "dg" || d.kind == "ainf") {
    const auto& a = *d.pres;
    const auto& q = a.quiver;
    os << "kmax " << a.kmax << '\n';
    for (const auto& x : q.objects()) os << "object " << x << '\n';
    for (int g = 0; g < q.num_gens(); ++g) {
      const auto& G = q.gen(g);
      os << "gen " << G.label << ' ' << q.objects()[G.src] << ' ' << q.objects()[G.tgt] << ' ' << G.degree << '\n';
    }
    if (a.has_units)
      for (int x = 0; x < q.num_objects(); ++x) os << "unit " << q.objects()[x] << ' ' << detail::vec_token(q, a.units[x]) << '\n';
    const bool strict = detail::has_strict_unit_rules(a);
    if (strict) os << "strict-units\n";
    for (int k = 1; k <= a.kmax; ++k)
      for (const auto& [c, v] : a.ops[k]) {
        if (strict && detail::is_unit_rule(a, c)) continue;
        os << "op " << k;
        for (int g : c) os << ' ' << q.gen(g).label;
        os << " = " << detail::vec_token(q, v) << '\n';
      }
  } else if (d.kind == "functor") {
    const auto& f = *d.functor;
    os << "source " << d.source_ref << '\n';
    os << "target " << d.target_ref << '\n';
    for (std::size_t x = 0; x < f.obj_map.size(); ++x)
      os << "map " << f.src->quiver.objects()[x] << ' ' << f.tgt->quiver.objects()[f.obj_map[x]] << '\n';
    detail::print_components(os, f);
  } else if (d.kind == "simplex") {
    const auto& f = *d.functor;
    os << "target " << d.target_ref << '\n';
    os << "dim " << d.dim << '\n';
    os << "vertices";
    for (int y : f.obj_map) os << ' ' << f.tgt->quiver.objects()[y];
    os << '\n';
    detail::print_components(os, f);
  } else if (d.kind == "cocategory") {
    os << "base " << d.source_ref << '\n';
    os << "max-length " << d.max_len << '\n';
  } else {
    throw std::invalid_argument("print_document: unknown kind '" + d.kind + "'");
  }
  return os.str();
}

namespace detail {

class DocParser {
 public:
  DocParser(const std::string& text, Resolver resolve) : resolve_(std::move(resolve)) {
    std::size_t pos = 0;
    int n = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      ++n;
      if (nl == std::string::npos) throw DocumentError(n, static_cast<int>(text.size() - pos) + 1, "missing final newline");
      lines_.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  Document run() {
    Document d;
    expect_fixed("ainf-document", "1");
    d.kind = value("kind");
    d.name = value("name");
    if (d.name.empty()) fail(0, "empty name");
    {
      const std::string f = value("field");
      try {
        d.field = Field::from_name(f);
      } catch (const std::exception& e) {
        fail_at(cur_ - 1, 7, std::string("bad field: ") + e.what());
      }
    }
    if (d.kind == "dg" || d.kind == "ainf")
      presentation(d);
    else if (d.kind == "functor")
      functor(d);
    else if (d.kind == "simplex")
      simplex(d);
    else if (d.kind == "cocategory")
      cocategory(d);
    else
      throw DocumentError(2, 6, "unknown kind '" + d.kind + "'");
    if (cur_ < lines_.size()) fail(1, "unexpected directive '" + tokens(lines_[cur_])[0].first + "'");
    return d;
  }

 private:
  using Tok = std::pair<std::string, int>;  // text, column

  [[noreturn]] void fail(int col, const std::string& msg) const {
    throw DocumentError(static_cast<int>(std::min(cur_, lines_.size() - 1) + 1), col, msg);
  }
  [[noreturn]] void fail_at(std::size_t line, int col, const std::string& msg) const {
    throw DocumentError(static_cast<int>(line + 1), col, msg);
  }

  std::vector<Tok> tokens(const std::string& l) const {
    std::vector<Tok> out;
    if (l.empty()) fail(1, "empty line");
    std::size_t p = 0;
    while (true) {
      auto sp = l.find(' ', p);
      std::string t = l.substr(p, sp == std::string::npos ? std::string::npos : sp - p);
      if (t.empty()) fail(static_cast<int>(p) + 1, "expected a single space between fields");
      out.push_back({t, static_cast<int>(p) + 1});
      if (sp == std::string::npos) break;
      p = sp + 1;
    }
    return out;
  }

  bool peek(const std::string& key) const { return cur_ < lines_.size() && tokens(lines_[cur_])[0].first == key; }

  std::vector<Tok> take(const std::string& key) {
    if (cur_ >= lines_.size()) fail(0, "expected '" + key + "' before the end of the document");
    auto t = tokens(lines_[cur_]);
    if (t[0].first != key) fail(1, "expected '" + key + "', found '" + t[0].first + "'");
    ++cur_;
    return t;
  }

  std::string value(const std::string& key) {
    auto t = take(key);
    if (t.size() != 2) fail_at(cur_ - 1, t.size() > 2 ? t[2].second : 0, "'" + key + "' takes one value");
    return t[1].first;
  }

  void expect_fixed(const std::string& key, const std::string& v) {
    if (value(key) != v) fail_at(cur_ - 1, static_cast<int>(key.size()) + 2, "unsupported " + key + " version");
  }

  int integer(const Tok& t) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(t.first, &used);
      if (used != t.first.size() || std::to_string(v) != t.first) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail_at(cur_ - 1, t.second, "expected an integer, found '" + t.first + "'");
    }
  }

  Scalar scalar(const Field& f, const std::string& s, int col) const {
    if (f.modulus()) {
      mpz_class k;
      bool ok = !s.empty() && (s[0] != '0' || s.size() == 1) &&
                s.find_first_not_of("0123456789") == std::string::npos && k.set_str(s, 10) == 0;
      if (!ok) {
        if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos && k.set_str(s, 10) == 0) {
          mpz_class r = k % f.modulus();
          if (r < 0) r += f.modulus();
          fail_at(cur_ - 1, col, "non-canonical scalar '" + s + "' in " + f.name() + ", write '" + r.get_str() + "'");
        }
        fail_at(cur_ - 1, col, "malformed scalar '" + s + "'");
      }
      if (k >= f.modulus())
        fail_at(cur_ - 1, col, "non-canonical scalar '" + s + "' in " + f.name() + ", write '" +
                                   mpz_class(k % f.modulus()).get_str() + "'");
      return Scalar::in(f, mpq_class(k));
    }
    try {
      return Scalar::parse(s);
    } catch (const ScalarParseError& e) {
      std::string msg = e.what();
      if (!e.suggestion.empty()) msg += ", write '" + e.suggestion + "'";
      fail_at(cur_ - 1, col, msg);
    }
  }

  int gen_of(const GradedQuiver& q, const Tok& t) const {
    int g = q.gen_index(t.first);
    if (g < 0) fail_at(cur_ - 1, t.second, "unknown generator '" + t.first + "'");
    return g;
  }
  int object_of(const GradedQuiver& q, const Tok& t) const {
    int x = q.object_index(t.first);
    if (x < 0) fail_at(cur_ - 1, t.second, "unknown object '" + t.first + "'");
    return x;
  }

  // tokens [from, end) form "c*label + c*label ..." or "0"
  Vec vec(const GradedQuiver& q, const Field& f, const std::vector<Tok>& t, std::size_t from) const {
    Vec v;
    if (from >= t.size()) fail_at(cur_ - 1, 0, "missing value");
    if (t.size() == from + 1 && t[from].first == "0") return v;
    int last = -1;
    for (std::size_t i = from; i < t.size(); i += 2) {
      if (i > from && t[i - 1].first != "+") fail_at(cur_ - 1, t[i - 1].second, "expected '+'");
      const auto& tok = t[i];
      auto star = tok.first.find('*');
      if (star == std::string::npos) fail_at(cur_ - 1, tok.second, "expected coefficient*label, found '" + tok.first + "'");
      Scalar c = scalar(f, tok.first.substr(0, star), tok.second);
      if (c.is_zero()) fail_at(cur_ - 1, tok.second, "zero coefficient");
      int g = gen_of(q, {tok.first.substr(star + 1), tok.second + static_cast<int>(star) + 1});
      if (g <= last) fail_at(cur_ - 1, tok.second, "terms must be listed once, in generator order");
      last = g;
      v[g] = c;
    }
    if ((t.size() - from) % 2 == 0) fail_at(cur_ - 1, t.back().second, "dangling '+'");
    return v;
  }

  std::size_t find_eq(const std::vector<Tok>& t) const {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i].first == "=") return i;
    fail_at(cur_ - 1, 0, "expected '='");
  }

  template <class Fn>
  void semantic(Fn&& fn, int col) const {
    try {
      fn();
    } catch (const ValidationError& e) {
      fail_at(cur_ - 1, col, e.what());
    }
  }

  PresPtr resolve(const Tok& ref, std::size_t line) const {
    try {
      auto p = resolve_ ? resolve_(ref.first) : nullptr;
      if (!p) fail_at(line, ref.second, "cannot resolve category '" + ref.first + "'");
      return p;
    } catch (const DocumentError&) {
      throw;
    } catch (const std::exception& e) {
      fail_at(line, ref.second, "cannot resolve category '" + ref.first + "': " + e.what());
    }
  }

  void presentation(Document& d) {
    auto a = std::make_shared<AInfPresentation>();
    a->name = d.name;
    a->field = d.field;
    {
      auto t = take("kmax");
      if (t.size() != 2) fail_at(cur_ - 1, 0, "'kmax' takes one value");
      const int k = integer(t[1]);
      if (k < 1) fail_at(cur_ - 1, t[1].second, "kmax must be at least 1");
      a->set_kmax(k);
    }
    while (peek("object")) {
      auto x = value("object");
      if (a->quiver.object_index(x) >= 0) fail_at(cur_ - 1, 8, "duplicate object '" + x + "'");
      a->quiver.add_object(x);
    }
    while (peek("gen")) {
      auto t = take("gen");
      if (t.size() != 5) fail_at(cur_ - 1, 0, "gen takes label, source, target, degree");
      if (a->quiver.gen_index(t[1].first) >= 0) fail_at(cur_ - 1, t[1].second, "duplicate generator '" + t[1].first + "'");
      if (t[1].first == "0" || t[1].first == "=" || t[1].first == "+" || t[1].first.find('*') != std::string::npos)
        fail_at(cur_ - 1, t[1].second, "reserved generator label '" + t[1].first + "'");
      a->quiver.add_generator(t[1].first, object_of(a->quiver, t[2]), object_of(a->quiver, t[3]), integer(t[4]));
    }
    while (peek("unit")) {
      auto t = take("unit");
      if (t.size() < 3) fail_at(cur_ - 1, 0, "unit takes an object and a value");
      const int x = object_of(a->quiver, t[1]);
      Vec u = vec(a->quiver, d.field, t, 2);
      semantic([&] { a->set_unit(x, u); }, t[2].second);
    }
    if (peek("strict-units")) {
      auto t = take("strict-units");
      if (t.size() != 1) fail_at(cur_ - 1, t[1].second, "strict-units takes no value");
      if (!a->has_units) fail_at(cur_ - 1, 1, "strict-units needs unit lines");
      for (int x = 0; x < a->quiver.num_objects(); ++x)
        if (a->unit_gen(x) < 0) fail_at(cur_ - 1, 1, "strict-units needs every unit to be a single generator");
      apply_strict_unit_rules(*a);
    }
    while (peek("op")) {
      auto t = take("op");
      const std::size_t eq = find_eq(t);
      if (t.size() < 3) fail_at(cur_ - 1, 0, "op takes an arity, inputs and a value");
      const int k = integer(t[1]);
      if (k < 1 || k > a->kmax) fail_at(cur_ - 1, t[1].second, "arity " + t[1].first + " outside 1..kmax");
      if (static_cast<int>(eq) != 2 + k) fail_at(cur_ - 1, t[1].second, "op " + t[1].first + " needs " + t[1].first + " inputs");
      Chain c;
      for (std::size_t i = 2; i < eq; ++i) c.push_back(gen_of(a->quiver, t[i]));
      Vec v = vec(a->quiver, d.field, t, eq + 1);
      semantic([&] { a->set_op(k, c, v); }, t[2].second);
    }
    if (d.kind == "dg" && !a->is_dg()) fail_at(1, 6, "kind dg but higher operations are present");
    if (d.kind == "ainf" && a->is_dg()) fail_at(1, 6, "kind ainf but the operations are those of a dg-category");
    d.pres = a;
  }

  void components(AInfFunctor& f) {
    while (peek("f")) {
      auto t = take("f");
      const std::size_t eq = find_eq(t);
      if (t.size() < 3) fail_at(cur_ - 1, 0, "f takes an arity, inputs and a value");
      const int k = integer(t[1]);
      if (k < 1) fail_at(cur_ - 1, t[1].second, "arity must be positive");
      if (static_cast<int>(eq) != 2 + k) fail_at(cur_ - 1, t[1].second, "f " + t[1].first + " needs " + t[1].first + " inputs");
      Chain c;
      for (std::size_t i = 2; i < eq; ++i) c.push_back(gen_of(f.src->quiver, t[i]));
      Vec v = vec(f.tgt->quiver, f.tgt->field, t, eq + 1);
      semantic([&] { f.set(k, c, v); }, t[2].second);
    }
  }

  void functor(Document& d) {
    auto fs = take("source");
    if (fs.size() != 2) fail_at(cur_ - 1, 0, "'source' takes one value");
    auto ft = take("target");
    if (ft.size() != 2) fail_at(cur_ - 1, 0, "'target' takes one value");
    d.source_ref = fs[1].first;
    d.target_ref = ft[1].first;
    auto f = std::make_shared<AInfFunctor>();
    f->name = d.name;
    f->src = resolve(fs[1], cur_ - 2);
    f->tgt = resolve(ft[1], cur_ - 1);
    if (!(f->src->field == d.field) || !(f->tgt->field == d.field)) fail_at(cur_ - 1, 1, "field differs from the categories");
    f->obj_map.assign(f->src->quiver.num_objects(), -1);
    for (int x = 0; x < f->src->quiver.num_objects(); ++x) {
      auto t = take("map");
      if (t.size() != 3) fail_at(cur_ - 1, 0, "map takes a source and a target object");
      if (object_of(f->src->quiver, t[1]) != x) fail_at(cur_ - 1, t[1].second, "map lines must follow the source object order");
      f->obj_map[x] = object_of(f->tgt->quiver, t[2]);
    }
    components(*f);
    d.functor = f;
  }

  void simplex(Document& d) {
    auto ft = take("target");
    if (ft.size() != 2) fail_at(cur_ - 1, 0, "'target' takes one value");
    d.target_ref = ft[1].first;
    auto t = take("dim");
    if (t.size() != 2) fail_at(cur_ - 1, 0, "'dim' takes one value");
    d.dim = integer(t[1]);
    if (d.dim < 0 || d.dim > 9) fail_at(cur_ - 1, t[1].second, "dimension outside 0..9");
    auto tgt = resolve(ft[1], cur_ - 2);
    if (!(tgt->field == d.field)) fail_at(cur_ - 1, 1, "field differs from the target category");
    auto v = take("vertices");
    if (static_cast<int>(v.size()) != d.dim + 2) fail_at(cur_ - 1, 0, "need dim + 1 vertices");
    std::vector<int> objs;
    for (std::size_t i = 1; i < v.size(); ++i) objs.push_back(object_of(tgt->quiver, v[i]));
    Simplex s = make_simplex(tgt, d.dim, objs);
    s.f.name = d.name;
    components(s.f);
    d.functor = std::make_shared<AInfFunctor>(s.f);
  }

  void cocategory(Document& d) {
    d.source_ref = value("base");
    auto t = take("max-length");
    if (t.size() != 2) fail_at(cur_ - 1, 0, "'max-length' takes one value");
    d.max_len = integer(t[1]);
    if (d.max_len < 1) fail_at(cur_ - 1, t[1].second, "max-length must be at least 1");
    auto base = resolve({d.source_ref, 6}, cur_ - 2);
    if (!(base->field == d.field)) fail_at(cur_ - 1, 1, "field differs from the base category");
  }

  std::vector<std::string> lines_;
  std::size_t cur_ = 0;
  Resolver resolve_;
};

}  // namespace detail

inline Document parse_document(const std::string& text, const Resolver& resolve = {}) {
  if (text.empty()) throw DocumentError(1, 1, "empty document");
  return detail::DocParser(text, resolve).run();
}

inline Document presentation_document(const AInfPresentation& a) {
  Document d;
  d.kind = a.is_dg() ? "dg" : "ainf";
  d.name = a.name;
  d.field = a.field;
  d.pres = std::make_shared<const AInfPresentation>(a);
  return d;
}

inline Document functor_document(const AInfFunctor& f, const std::string& source_ref, const std::string& target_ref) {
  Document d;
  d.kind = "functor";
  d.name = f.name;
  d.field = f.tgt->field;
  d.functor = std::make_shared<const AInfFunctor>(f);
  d.source_ref = source_ref;
  d.target_ref = target_ref;
  return d;
}

inline Document simplex_document(const Simplex& s, const std::string& name, const std::string& target_ref) {
  Document d;
  d.kind = "simplex";
  d.name = name;
  d.field = s.target().field;
  d.functor = std::make_shared<const AInfFunctor>(s.f);
  d.dim = s.dim;
  d.target_ref = target_ref;
  return d;
}

}  // namespace ainf
