#pragma once

// Command-line driver. Exit codes: 0 success or true, 1 checked-false,
// 2 usage error, 3 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/barcobar.hpp"
#include "ainf/format.hpp"
#include "ainf/functor_cat.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/homotopy.hpp"
#include "ainf/nerve.hpp"

#ifndef AINF_CORPUS_DIR
#define AINF_CORPUS_DIR "corpus"
#endif

namespace ainf::cli {

enum Exit : int { kOk = 0, kFalse = 1, kUsage = 2, kInvalid = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDocument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::ordered_json;

class Session {
 public:
  Session(std::string corpus_dir, bool json_mode, bool validate, std::ostream& out)
      : corpus_(std::move(corpus_dir)), json_(json_mode), validate_(validate), out_(out) {}

  void emit(const json& j, const std::string& text) {
    if (json_)
      out_ << j.dump() << '\n';
    else
      out_ << text << '\n';
  }
  bool json_mode() const { return json_; }
  std::ostream& out() { return out_; }

  // A document by corpus name or file path, validated unless disabled.
  const Document& load(const std::string& ref, const std::filesystem::path& base = {}) {
    const auto path = locate(ref, base);
    auto it = docs_.find(path);
    if (it != docs_.end()) return it->second;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read document '" + ref + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Document d;
    try {
      d = parse_document(ss.str(), [this, dir = path.parent_path()](const std::string& r) { return category(r, dir); });
    } catch (const DocumentError& e) {
      throw InvalidDocument(path.filename().string() + ": " + e.what());
    }
    if (validate_) check(d);
    return docs_.emplace(path, std::move(d)).first->second;
  }

  PresPtr category(const std::string& ref, const std::filesystem::path& base = {}) {
    const Document& d = load(ref, base);
    if (d.kind != "dg" && d.kind != "ainf") throw InvalidDocument("'" + ref + "' is a " + d.kind + " document, not a category");
    return d.pres;
  }

  std::string ref_name(const std::string& ref) const { return std::filesystem::path(ref).stem().string(); }

  static CheckReport validation_report(const Document& d) {
    if (d.kind == "dg" || d.kind == "ainf") {
      auto r = check_stasheff(*d.pres, 1, 4);
      if (r.ok && d.pres->has_units) r = check_unitality(*d.pres, 4);
      return r;
    }
    if (d.kind == "functor") return check_functor(*d.functor, 1, 4);
    if (d.kind == "simplex") return validate_simplex(Simplex{d.dim, *d.functor});
    CheckReport r;
    return r;
  }

 private:
  std::filesystem::path locate(const std::string& ref, const std::filesystem::path& base) const {
    namespace fs = std::filesystem;
    if (ref.find('/') != std::string::npos || fs::path(ref).extension() == ".ainf") {
      fs::path p(ref);
      if (p.is_relative() && !base.empty() && fs::exists(base / p)) p = base / p;
      return fs::weakly_canonical(p);
    }
    if (!base.empty() && fs::exists(base / (ref + ".ainf"))) return fs::weakly_canonical(base / (ref + ".ainf"));
    return fs::weakly_canonical(fs::path(corpus_) / (ref + ".ainf"));
  }

  void check(const Document& d) {
    if (d.kind == "cocategory") {
      auto base = category(d.source_ref);
      auto c = bar(*base, d.max_len);
      if (int w = bar_b_squared_failure(c); w >= 0)
        throw InvalidDocument(d.name + ": b^2 != 0 on the word " + c.quiver.gen(w).label);
      return;
    }
    auto r = validation_report(d);
    if (!r.ok) throw InvalidDocument(d.name + ": " + r.message);
  }

  std::string corpus_;
  bool json_, validate_;
  std::ostream& out_;
  std::map<std::filesystem::path, Document> docs_;
};

namespace detail {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string coords_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + ainf::detail::scalar_token(v[i]);
  return s + ")";
}

inline const Document& functor_doc(Session& s, const std::string& ref) {
  const Document& d = s.load(ref);
  if (d.kind != "functor") throw UsageError("'" + ref + "' is not a functor document");
  return d;
}

inline int cmd_validate(Session& s, const std::string& ref) {
  // loaded without the implicit check so that the report can be printed
  const Document& d = s.load(ref);
  auto r = Session::validation_report(d);
  json j{{"record", "validate"}, {"document", d.name}, {"kind", d.kind}, {"valid", r.ok}};
  std::string text = d.name + " (" + d.kind + "): " + (r.ok ? "valid" : "invalid");
  if (!r.ok) {
    j["message"] = r.message;
    text += "\n  " + r.message;
  }
  s.emit(j, text);
  return r.ok ? kOk : kInvalid;
}

inline int cmd_h0(Session& s, const std::string& ref) {
  auto a = s.category(ref);
  auto h = h0(*a);
  const auto& q = a->quiver;
  for (int x = 0; x < q.num_objects(); ++x)
    for (int y = 0; y < q.num_objects(); ++y) {
      json reps = json::array();
      std::string text = "hom " + q.objects()[x] + " " + q.objects()[y] + " dim " + std::to_string(h.dim(x, y));
      auto it = h.hom.find({x, y});
      if (it != h.hom.end())
        for (const auto& v : it->second) {
          reps.push_back(ainf::detail::vec_token(q, v));
          text += " | " + ainf::detail::vec_token(q, v);
        }
      s.emit(json{{"record", "hom"}, {"source", q.objects()[x]}, {"target", q.objects()[y]}, {"dim", h.dim(x, y)},
                  {"representatives", reps}},
             text);
    }
  for (const auto& [key, table] : h.comp) {
    const auto [x, y, z] = key;
    for (std::size_t i = 0; i < table.size(); ++i)
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        json c = json::array();
        for (const auto& v : table[i][j]) c.push_back(ainf::detail::scalar_token(v));
        s.emit(json{{"record", "composition"},
                    {"objects", {q.objects()[x], q.objects()[y], q.objects()[z]}},
                    {"left", i},
                    {"right", j},
                    {"class", c}},
               "comp " + q.objects()[x] + " " + q.objects()[y] + " " + q.objects()[z] + " [" + std::to_string(i) +
                   "] o [" + std::to_string(j) + "] = " + coords_str(table[i][j]));
      }
  }
  if (!h.well_defined) {
    s.emit(json{{"record", "warning"}, {"message", h.message}}, "warning: " + h.message);
    return kFalse;
  }
  return kOk;
}

inline int cmd_predicate(Session& s, const std::string& ref, bool weq) {
  const Document& d = functor_doc(s, ref);
  PredicateResult r;
  try {
    r = weq ? is_weak_equivalence(*d.functor) : is_fibration(*d.functor);
  } catch (const NotDgError& e) {
    throw UsageError(e.what());
  }
  const std::string name = weq ? "is-weq" : "is-fib";
  json w = json::array();
  std::string text = name + " " + d.name + ": " + (r.value ? "true" : "false");
  for (const auto& line : r.witness) {
    w.push_back(line);
    text += "\n  " + line;
  }
  s.emit(json{{"record", name}, {"functor", d.name}, {"value", r.value}, {"witness", w}}, text);
  return r.value ? kOk : kFalse;
}

inline int cmd_bar(Session& s, const std::string& ref, int L) {
  auto a = s.category(ref);
  auto c = bar(*a, L);
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    const auto b = ainf::detail::vec_token(c.quiver, c.b[w]);
    s.emit(json{{"record", "word"}, {"word", c.quiver.gen(w).label}, {"length", c.length(w)}, {"degree", c.degree(w)}, {"b", b}},
           "word " + c.quiver.gen(w).label + " length " + std::to_string(c.length(w)) + " degree " +
               std::to_string(c.degree(w)) + " b = " + b);
  }
  const int fail = bar_b_squared_failure(c);
  const bool ok = fail < 0 && bar_coassociative(c) && bar_counital(c) && bar_coleibniz(c);
  s.emit(json{{"record", "summary"}, {"words", c.words.size()}, {"identities", ok}},
         "words " + std::to_string(c.words.size()) + " identities " + (ok ? "ok" : "FAIL"));
  return ok ? kOk : kFalse;
}

inline int cmd_cobar(Session& s, const std::string& ref, std::optional<int> L) {
  const Document& d = s.load(ref);
  CoCatPresentation c;
  if (d.kind == "cocategory") {
    c = bar(*s.category(d.source_ref), d.max_len);
  } else if (d.kind == "dg" || d.kind == "ainf") {
    if (!L) throw UsageError("cobar of a category needs --max-length");
    c = bar(*d.pres, *L);
  } else {
    throw UsageError("cobar needs a cocategory or category document");
  }
  auto cb = cobar(c, L.value_or(c.max_len));
  const auto& q = cb.pres.quiver;
  for (int g = 0; g < q.num_gens(); ++g) {
    const Vec* v = cb.pres.op(1, {g});
    const auto dv = v ? ainf::detail::vec_token(q, *v) : std::string("0");
    s.emit(json{{"record", "generator"}, {"label", q.gen(g).label}, {"degree", q.degree(g)}, {"letters", cb.letters[g]}, {"d", dv}},
           "gen " + q.gen(g).label + " degree " + std::to_string(q.degree(g)) + " letters " +
               std::to_string(cb.letters[g]) + " d = " + dv);
  }
  const bool ok = !cobar_window_failure(cb);
  s.emit(json{{"record", "summary"}, {"generators", q.num_gens()}, {"identities", ok}},
         "generators " + std::to_string(q.num_gens()) + " identities " + (ok ? "ok" : "FAIL"));
  return ok ? kOk : kFalse;
}

inline Envelope envelope_of(Session& s, const std::string& ref, int L) {
  auto a = s.category(ref);
  try {
    return envelope(a, L);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

inline int cmd_envelope(Session& s, const std::string& ref, int L) {
  auto e = envelope_of(s, ref, L);
  const auto& q = e.env->quiver;
  for (int g = 0; g < q.num_gens(); ++g) {
    const Vec* v = e.env->op(1, {g});
    const auto dv = v ? ainf::detail::vec_token(q, *v) : std::string("0");
    const auto& G = q.gen(g);
    s.emit(json{{"record", "generator"}, {"label", G.label}, {"source", q.objects()[G.src]}, {"target", q.objects()[G.tgt]},
                {"degree", G.degree}, {"d", dv}},
           "gen " + G.label + " " + q.objects()[G.src] + " " + q.objects()[G.tgt] + " degree " +
               std::to_string(G.degree) + " d = " + dv);
  }
  s.emit(json{{"record", "summary"}, {"generators", q.num_gens()}}, "generators " + std::to_string(q.num_gens()));
  return kOk;
}

inline int cmd_gamma_check(Session& s, const std::string& ref, int L) {
  auto e = envelope_of(s, ref, L);
  auto g = gamma(e);
  auto r = check_gamma(e, g);
  bool ok = r.ok;
  s.emit(json{{"record", "functor"}, {"ok", r.ok}, {"truncated", r.truncated}, {"message", r.message}},
         std::string("gamma functor equations: ") + (r.ok ? "ok" : "FAIL " + r.message) +
             (r.truncated ? " (chains beyond the letter bound skipped)" : ""));
  const auto& D = *e.original;
  for (int x = 0; x < D.quiver.num_objects(); ++x)
    for (int y = 0; y < D.quiver.num_objects(); ++y) {
      auto cu = hom_complex_of(*e.env, x, y);
      auto cd = hom_window(D, x, y, cu.lo, cu.hi);
      for (int k = cu.lo + 1; k < cu.hi; ++k) {
        const int hu = cohomology(cu, k).dimension, hd = cohomology(cd, k).dimension;
        ok = ok && hu == hd;
        s.emit(json{{"record", "cohomology"}, {"source", D.quiver.objects()[x]}, {"target", D.quiver.objects()[y]},
                    {"degree", k}, {"envelope", hu}, {"original", hd}},
               "hom " + D.quiver.objects()[x] + " " + D.quiver.objects()[y] + " degree " + std::to_string(k) +
                   " envelope " + std::to_string(hu) + " original " + std::to_string(hd));
      }
    }
  s.emit(json{{"record", "summary"}, {"quasi_isomorphism", ok}}, std::string("gamma-check: ") + (ok ? "ok" : "FAIL"));
  return ok ? kOk : kFalse;
}

inline int cmd_hom_complex(Session& s, const std::string& fref, const std::string& gref, int lo, int hi,
                           std::optional<int> arity) {
  const Document& F = functor_doc(s, fref);
  const Document& G = functor_doc(s, gref);
  HomComplexWindow w;
  try {
    w = hom_complex(F.functor, G.functor, lo - 1, hi + 1, arity);
  } catch (const FunctorMismatch& e) {
    throw UsageError(e.what());
  } catch (const WindowError& e) {
    throw UsageError(e.what());
  }
  for (int d = lo; d <= hi; ++d) {
    const int h = cohomology(w.complex, d).dimension;
    const bool st = w.stable.at(d - 1) && w.stable.at(d) && w.stable.at(d + 1);
    s.emit(json{{"record", "degree"}, {"degree", d}, {"dim", w.complex.dim(d)}, {"cohomology", h}, {"arity_bound", w.arity_bound.at(d)},
                {"stable", st}},
           "degree " + std::to_string(d) + " dim " + std::to_string(w.complex.dim(d)) + " H " + std::to_string(h) +
               " arity " + std::to_string(w.arity_bound.at(d)) + " stable " + yes(st));
  }
  return kOk;
}

inline const Document& simplex_doc(Session& s, const std::string& ref) {
  const Document& d = s.load(ref);
  if (d.kind != "simplex") throw UsageError("'" + ref + "' is not a simplex document");
  return d;
}

inline int cmd_nerve(Session& s, const std::string& ref) {
  const Document& d = simplex_doc(s, ref);
  Simplex x{d.dim, *d.functor};
  auto r = validate_simplex(x);
  s.emit(json{{"record", "simplex"}, {"name", d.name}, {"dim", d.dim}, {"valid", r.ok}},
         "simplex " + d.name + " dim " + std::to_string(d.dim) + " valid " + yes(r.ok));
  if (!r.ok) return kInvalid;
  for (int j = 0; d.dim > 0 && j <= d.dim; ++j) {
    auto f = face(x, j);
    f.f.name = d.name + "_d" + std::to_string(j);
    const auto doc = print_document(simplex_document(f, f.f.name, d.target_ref));
    s.emit(json{{"record", "face"}, {"index", j}, {"document", doc}}, "face " + std::to_string(j) + "\n" + doc.substr(0, doc.size() - 1));
  }
  return kOk;
}

inline int cmd_horn_fill(Session& s, int n, int i, const std::vector<std::string>& refs, const std::string& name) {
  if (static_cast<int>(refs.size()) != n) throw UsageError("horn-fill needs n faces, listed by index skipping i");
  HornInstance h{n, i, {}};
  std::string target;
  int slot = 0;
  for (int j = 0; j <= n; ++j) {
    if (j == i) continue;
    const Document& d = simplex_doc(s, refs[slot++]);
    h.faces[j] = Simplex{d.dim, *d.functor};
    target = d.target_ref;
  }
  HornFill fill;
  try {
    fill = fill_inner_horn(h);
  } catch (const HornError& e) {
    s.emit(json{{"record", "error"}, {"message", e.what()}}, std::string("horn-fill: ") + e.what());
    return kInvalid;
  } catch (const UnsupportedFeature& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  fill.filler.f.name = name;
  const auto doc = print_document(simplex_document(fill.filler, name, target));
  if (s.json_mode())
    s.emit(json{{"record", "filler"}, {"kernel_dim", fill.kernel_dim}, {"document", doc}}, "");
  else
    s.out() << doc;
  return kOk;
}

inline int cmd_max_kan(Session& s, const std::string& ref) {
  const Document& d = simplex_doc(s, ref);
  Simplex x{d.dim, *d.functor};
  const auto& A = x.target();
  bool all = true;
  for (int a = 0; a <= d.dim; ++a)
    for (int b = a + 1; b <= d.dim; ++b) {
      auto w = find_inverse(A, x.f.obj_map[a], x.f.obj_map[b], x.edge(a, b));
      all = all && w.has_value();
      json j{{"record", "edge"}, {"from", a}, {"to", b}, {"value", ainf::detail::vec_token(A.quiver, x.edge(a, b))},
             {"equivalence", w.has_value()}};
      std::string text = "edge " + std::to_string(a) + " " + std::to_string(b) + " " +
                         ainf::detail::vec_token(A.quiver, x.edge(a, b)) + " equivalence " + yes(w.has_value());
      if (w) {
        j["inverse"] = ainf::detail::vec_token(A.quiver, w->inverse);
        text += " inverse " + ainf::detail::vec_token(A.quiver, w->inverse);
      }
      s.emit(j, text);
    }
  s.emit(json{{"record", "summary"}, {"in_max_kan", all}}, "in-max-kan " + yes(all));
  return all ? kOk : kFalse;
}

inline int cmd_compose(Session& s, const std::string& fref, const std::string& gref, const std::string& name) {
  const Document& F = functor_doc(s, fref);
  const Document& G = functor_doc(s, gref);
  if (F.functor->tgt.get() != G.functor->src.get()) throw UsageError("compose: target of the first functor is not the source of the second");
  AInfFunctor c = compose_functors(*F.functor, *G.functor, 8);
  c.name = name;
  const auto doc = print_document(functor_document(c, F.source_ref, G.target_ref));
  if (s.json_mode())
    s.emit(json{{"record", "composite"}, {"truncated", c.truncated}, {"document", doc}}, "");
  else
    s.out() << doc;
  return kOk;
}

inline int cmd_hochschild(Session& s, const std::string& ref, int lo, int hi, std::optional<int> arity, bool unstable,
                          bool reps) {
  auto id = identity_ptr(s.category(ref));
  for (int d = lo; d <= hi; ++d) {
    HHResult r;
    try {
      r = hh(id, d, arity, unstable);
    } catch (const WindowError& e) {
      throw UsageError(e.what());
    }
    s.emit(json{{"record", "hh"}, {"degree", d}, {"slice_dim", r.slice_dim}, {"hh_dim", r.dimension}, {"stable", r.stable}},
           "degree " + std::to_string(d) + " slice " + std::to_string(r.slice_dim) + " HH " +
               std::to_string(r.dimension) + " stable " + yes(r.stable));
    if (!reps) continue;
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      std::string text = "  class " + std::to_string(c) + ":";
      json comps = json::object();
      for (const auto& [w, v] : r.classes[c].rep.comps) {
        const auto key = nat_word_str(id->src->quiver, w);
        comps[key] = ainf::detail::vec_token(id->tgt->quiver, v);
        text += " " + key + "=" + ainf::detail::vec_token(id->tgt->quiver, v);
      }
      s.emit(json{{"record", "class"}, {"degree", d}, {"index", c}, {"components", comps}}, text);
    }
  }
  return kOk;
}

inline int cmd_pi(Session& s, const std::string& ref, int i, bool cross) {
  PiResult r;
  try {
    r = pi_endomorphisms(s.category(ref), i, cross);
  } catch (const UnsupportedFeature& e) {
    throw UsageError(e.what());
  } catch (const WindowError& e) {
    throw UsageError(e.what());
  }
  json j{{"record", "pi"}, {"i", i}, {"complex_degree", -i}, {"hh_dim", r.hh_dimension}};
  std::string text = "pi_" + std::to_string(i) + " = HH^" + std::to_string(-i) + " (complex degree " +
                     std::to_string(-i) + "): dim " + std::to_string(r.hh_dimension);
  if (r.cross_checked) {
    j["simplicial_dim"] = r.simplicial_dimension;
    j["agree"] = r.agree;
    text += ", simplicial dim " + std::to_string(r.simplicial_dimension) + (r.agree ? " (agree)" : " (DISAGREE)");
  }
  s.emit(j, text);
  return r.agree ? kOk : kFalse;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite presentations of A-infinity and dg-categories", "ainf"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string corpus = AINF_CORPUS_DIR;
  bool json_mode = false, no_validate = false;
  app.add_option("--corpus", corpus, "Directory searched for documents given by name");
  app.add_flag("--json", json_mode, "Line-delimited JSON records");
  app.add_flag("--no-validate", no_validate, "Skip the checker when loading documents");

  std::string doc, doc2, name;
  int max_len = 4, lo = 0, hi = 0, n = 2, i = 1;
  std::optional<int> arity, cobar_len;
  bool unstable = false, reps = false, cross = false;
  std::vector<std::string> faces;

  auto* validate = app.add_subcommand("validate", "Check a document with its kind's checker");
  validate->add_option("document", doc)->required();
  auto* h0c = app.add_subcommand("h0", "Homotopy category of a dg-category");
  h0c->add_option("category", doc)->required();
  auto* weq = app.add_subcommand("is-weq", "Is a dg-functor a weak equivalence");
  weq->add_option("functor", doc)->required();
  auto* fib = app.add_subcommand("is-fib", "Is a dg-functor a fibration");
  fib->add_option("functor", doc)->required();
  auto* barc = app.add_subcommand("bar", "Bar construction up to a word length");
  barc->add_option("category", doc)->required();
  barc->add_option("--max-length", max_len)->check(CLI::PositiveNumber);
  auto* cobarc = app.add_subcommand("cobar", "Cobar construction of a cocategory");
  cobarc->add_option("document", doc)->required();
  cobarc->add_option("--max-length", cobar_len)->check(CLI::PositiveNumber);
  auto* env = app.add_subcommand("envelope", "Enveloping dg-category up to a letter count");
  env->add_option("category", doc)->required();
  env->add_option("--max-length", max_len)->check(CLI::PositiveNumber);
  auto* gam = app.add_subcommand("gamma-check", "Check the comparison functor from the envelope");
  gam->add_option("category", doc)->required();
  gam->add_option("--max-length", max_len)->check(CLI::PositiveNumber);
  auto* homc = app.add_subcommand("hom-complex", "Hom complex between two functors");
  homc->add_option("source-functor", doc)->required();
  homc->add_option("target-functor", doc2)->required();
  homc->add_option("--lo", lo)->required();
  homc->add_option("--hi", hi)->required();
  homc->add_option("--arity-max", arity);
  auto* nerve = app.add_subcommand("nerve", "Validate a simplex of the nerve and list its faces");
  nerve->add_option("simplex", doc)->required();
  auto* horn = app.add_subcommand("horn-fill", "Fill an inner horn given its faces");
  horn->add_option("--n", n)->required();
  horn->add_option("--i", i)->required();
  horn->add_option("--name", name);
  horn->add_option("faces", faces)->required();
  auto* kan = app.add_subcommand("max-kan", "Is a simplex in the maximal Kan subcomplex");
  kan->add_option("simplex", doc)->required();
  auto* comp = app.add_subcommand("compose", "Compose two functors (first, then second)");
  comp->add_option("first", doc)->required();
  comp->add_option("second", doc2)->required();
  comp->add_option("--name", name);
  auto* hoch = app.add_subcommand("hochschild", "Hochschild complex and cohomology");
  hoch->add_option("category", doc)->required();
  hoch->add_option("--max-degree", hi)->required();
  hoch->add_option("--min-degree", lo);
  hoch->add_option("--arity-max", arity);
  hoch->add_flag("--allow-unstable", unstable);
  hoch->add_flag("--representatives", reps);
  auto* pic = app.add_subcommand("pi", "Homotopy groups of the endomorphism space of the identity");
  pic->add_option("category", doc)->required();
  pic->add_option("--i", i)->required()->check(CLI::NonNegativeNumber);
  pic->add_flag("--cross-check", cross);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Session s(corpus, json_mode, !no_validate, out);
  try {
    if (*validate) {
      Session raw(corpus, json_mode, false, out);
      return detail::cmd_validate(raw, doc);
    }
    if (*h0c) return detail::cmd_h0(s, doc);
    if (*weq) return detail::cmd_predicate(s, doc, true);
    if (*fib) return detail::cmd_predicate(s, doc, false);
    if (*barc) return detail::cmd_bar(s, doc, max_len);
    if (*cobarc) return detail::cmd_cobar(s, doc, cobar_len);
    if (*env) return detail::cmd_envelope(s, doc, max_len);
    if (*gam) return detail::cmd_gamma_check(s, doc, max_len);
    if (*homc) return detail::cmd_hom_complex(s, doc, doc2, lo, hi, arity);
    if (*nerve) return detail::cmd_nerve(s, doc);
    if (*horn) return detail::cmd_horn_fill(s, n, i, faces, name.empty() ? "filler" : name);
    if (*kan) return detail::cmd_max_kan(s, doc);
    if (*comp) return detail::cmd_compose(s, doc, doc2, name.empty() ? "composite" : name);
    if (*hoch) return detail::cmd_hochschild(s, doc, lo, hi, arity, unstable, reps);
    if (*pic) return detail::cmd_pi(s, doc, i, cross);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidDocument& e) {
    err << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const UnsupportedFeature& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const WindowError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ainf::cli
