#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/category.hpp"

namespace ainf {

// ---- reduction and augmentation ---------------------------------------------

// Drops the unit generators and projects every operation onto the rest.
// Generator labels are kept, so ids can be matched by label.
inline AInfPresentation reduce(const AInfPresentation& a) {
  const auto& q = a.quiver;
  if (!a.has_units) throw ValidationError("reduce: presentation has no units");
  for (int x = 0; x < q.num_objects(); ++x)
    if (a.unit_gen(x) < 0) throw ValidationError("reduce: the unit of '" + q.objects()[x] + "' is not a generator");
  AInfPresentation r;
  r.name = "reduced_" + a.name;
  r.field = a.field;
  for (const auto& o : q.objects()) r.quiver.add_object(o);
  std::vector<int> remap(q.num_gens(), -1);
  for (int g = 0; g < q.num_gens(); ++g) {
    if (a.is_unit_gen(g)) continue;
    const auto& G = q.gen(g);
    remap[g] = r.quiver.add_generator(G.label, G.src, G.tgt, G.degree);
  }
  r.set_kmax(a.kmax);
  for (int k = 1; k <= a.kmax; ++k)
    for (const auto& [c, v] : a.ops[k]) {
      Chain rc;
      for (int g : c) rc.push_back(remap[g]);
      if (std::find(rc.begin(), rc.end(), -1) != rc.end()) continue;
      Vec out;
      for (const auto& [g, s] : v)
        if (remap[g] >= 0) add_term(out, remap[g], s);
      if (!out.empty()) r.ops[k][rc] = out;
    }
  return r;
}

// Non-unit generators span an ideal closed under every operation.
inline bool is_augmented(const AInfPresentation& a) {
  if (!a.has_units) return false;
  for (int x = 0; x < a.quiver.num_objects(); ++x)
    if (a.unit_gen(x) < 0) return false;
  for (int k = 1; k <= a.kmax; ++k)
    for (const auto& [c, v] : a.ops[k]) {
      bool unit_in = false;
      for (int g : c) unit_in = unit_in || a.is_unit_gen(g);
      if (unit_in) continue;
      for (const auto& [g, s] : v)
        if (a.is_unit_gen(g)) return false;
    }
  return true;
}

// Adjoins a strict unit to each object, labelled "1_x" unless a label is given.
inline AInfPresentation augment(const AInfPresentation& a, const std::map<std::string, std::string>& unit_labels = {}) {
  if (a.has_units) throw ValidationError("augment: presentation already has units");
  const auto& q = a.quiver;
  AInfPresentation r;
  r.name = a.name.rfind("reduced_", 0) == 0 ? a.name.substr(8) : "augmented_" + a.name;
  r.field = a.field;
  for (const auto& o : q.objects()) r.quiver.add_object(o);
  for (int x = 0; x < q.num_objects(); ++x) {
    auto it = unit_labels.find(q.objects()[x]);
    const std::string label = it != unit_labels.end() ? it->second : "1_" + q.objects()[x];
    if (q.gen_index(label) >= 0) throw ValidationError("augment: unit label '" + label + "' is already used");
    r.quiver.add_generator(label, x, x, 0);
  }
  const int shift_ids = q.num_objects();
  for (const auto& g : q.gens()) r.quiver.add_generator(g.label, g.src, g.tgt, g.degree);
  r.set_kmax(std::max(a.kmax, 2));
  for (int k = 1; k <= a.kmax; ++k)
    for (const auto& [c, v] : a.ops[k]) {
      Chain rc;
      for (int g : c) rc.push_back(g + shift_ids);
      Vec out;
      for (const auto& [g, s] : v) add_term(out, g + shift_ids, s);
      r.ops[k][rc] = out;
    }
  for (int x = 0; x < q.num_objects(); ++x) r.set_unit(x, basis_vec(x));
  for (int g = 0; g < r.quiver.num_gens(); ++g) {
    const auto& G = r.quiver.gen(g);
    r.ops[2][{G.tgt, g}] = basis_vec(g);
    r.ops[2][{g, G.src}] = basis_vec(g);
  }
  return r;
}

// Same quiver, operations and units (names may differ).
inline bool same_structure(const AInfPresentation& a, const AInfPresentation& b) {
  if (!(a.field == b.field) || !(a.quiver == b.quiver) || a.has_units != b.has_units || a.units != b.units)
    return false;
  const int k = std::max(a.kmax, b.kmax);
  for (int i = 1; i <= k; ++i) {
    const OpTable empty;
    const OpTable& x = i <= a.kmax ? a.ops[i] : empty;
    const OpTable& y = i <= b.kmax ? b.ops[i] : empty;
    if (x != y) return false;
  }
  return true;
}

// ---- bar construction ----------------------------------------------------------

// Words v_1 | ... | v_n (written order) of reduced generators with n <= max_len,
// bar degree sum(|v_i| - 1), codifferential b and the reduced separation
// coproduct. b never lengthens a word, so the window is b-closed.
struct CoCatPresentation {
  std::string name;
  Field field;
  AInfPresentation base;
  int max_len = 1;
  GradedQuiver quiver;  // one generator per word
  std::vector<Chain> words;
  std::map<Chain, int> index;
  std::vector<Vec> b;

  int word_id(const Chain& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  int length(int w) const { return static_cast<int>(words[w].size()); }
  int degree(int w) const { return quiver.degree(w); }

  // Reduced coproduct: (v_1..v_i) (x) (v_{i+1}..v_n), 1 <= i < n.
  std::vector<std::pair<int, int>> coproduct(int w) const {
    std::vector<std::pair<int, int>> out;
    const Chain& c = words[w];
    for (std::size_t i = 1; i < c.size(); ++i)
      out.push_back({index.at(Chain(c.begin(), c.begin() + i)), index.at(Chain(c.begin() + i, c.end()))});
    return out;
  }
};

inline std::string word_label(const GradedQuiver& q, const Chain& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "|" : "") + q.gen(c[i]).label;
  return s;
}

inline CoCatPresentation bar(const AInfPresentation& a, int max_len) {
  if (max_len < 1) throw std::invalid_argument("bar: word length bound must be at least 1");
  CoCatPresentation c;
  c.base = a.has_units ? reduce(a) : a;
  c.name = "bar_" + a.name;
  c.field = a.field;
  c.max_len = max_len;
  const auto& q = c.base.quiver;
  for (const auto& o : q.objects()) c.quiver.add_object(o);
  for (int n = 1; n <= max_len; ++n)
    for (const Chain& ch : q.chains(n)) {
      int deg = 0;
      for (int g : ch) deg += q.degree(g) - 1;
      const int id = c.quiver.add_generator(word_label(q, ch), q.chain_source(ch), q.chain_target(ch), deg);
      c.words.push_back(ch);
      c.index[ch] = id;
    }
  c.b.assign(c.words.size(), Vec{});
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    const Chain& ch = c.words[w];
    const int n = static_cast<int>(ch.size());
    long left_deg = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = 1; i + k <= n && k <= c.base.kmax; ++k) {
        Chain mid(ch.begin() + i, ch.begin() + i + k);
        const Vec* v = c.base.op(k, mid);
        if (!v) continue;
        const Scalar sign(parity_sign(left_deg) * shift_sign(q, mid));
        Chain out(ch.begin(), ch.begin() + i);
        out.push_back(-1);
        out.insert(out.end(), ch.begin() + i + k, ch.end());
        for (const auto& [g, s] : *v) {
          out[i] = g;
          add_term(c.b[w], c.index.at(out), sign * s);
        }
      }
      left_deg += q.degree(ch[i]) - 1;
    }
  }
  return c;
}

inline Vec bar_apply_b(const CoCatPresentation& c, const Vec& v) {
  Vec out;
  for (const auto& [w, s] : v) axpy(out, s, c.b[w]);
  return out;
}

// First word with b(b(w)) != 0, or -1.
inline int bar_b_squared_failure(const CoCatPresentation& c) {
  for (std::size_t w = 0; w < c.words.size(); ++w)
    if (!bar_apply_b(c, c.b[w]).empty()) return static_cast<int>(w);
  return -1;
}

using WordTensor = std::map<std::vector<int>, Scalar>;

inline void add_tensor_term(WordTensor& t, const std::vector<int>& key, const Scalar& s) {
  if (s.is_zero()) return;
  auto [it, fresh] = t.emplace(key, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) t.erase(it);
  }
}

// (Delta (x) Id) Delta = (Id (x) Delta) Delta on every word.
inline bool bar_coassociative(const CoCatPresentation& c) {
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    WordTensor l, r;
    for (auto [u, v] : c.coproduct(static_cast<int>(w))) {
      for (auto [u1, u2] : c.coproduct(u)) add_tensor_term(l, {u1, u2, v}, Scalar(1));
      for (auto [v1, v2] : c.coproduct(v)) add_tensor_term(r, {u, v1, v2}, Scalar(1));
    }
    if (l != r) return false;
  }
  return true;
}

// Counit on the coaugmented coproduct 1 (x) w + w (x) 1 + Delta(w): applying
// the counit on either side returns w, since it kills every word.
inline bool bar_counital(const CoCatPresentation& c) {
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    // full coproduct with -1 standing for the coaugmentation
    std::vector<std::pair<int, int>> full{{-1, static_cast<int>(w)}, {static_cast<int>(w), -1}};
    for (auto p : c.coproduct(static_cast<int>(w))) full.push_back(p);
    Vec left, right;
    for (auto [u, v] : full) {
      if (u == -1) add_term(left, v, Scalar(1));
      if (v == -1) add_term(right, u, Scalar(1));
    }
    if (!vec_equal(left, basis_vec(static_cast<int>(w))) || !vec_equal(right, basis_vec(static_cast<int>(w))))
      return false;
  }
  return true;
}

// (b (x) Id + Id (x) b) Delta = Delta b, with (Id (x) b)(u (x) v) = (-1)^{|u|} u (x) b v.
inline bool bar_coleibniz(const CoCatPresentation& c) {
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    WordTensor l, r;
    for (auto [u, v] : c.coproduct(static_cast<int>(w))) {
      for (const auto& [u2, s] : c.b[u]) add_tensor_term(l, {u2, v}, s);
      const Scalar sign(parity_sign(c.degree(u)));
      for (const auto& [v2, s] : c.b[v]) add_tensor_term(l, {u, v2}, sign * s);
    }
    for (const auto& [w2, s] : c.b[w])
      for (auto [u, v] : c.coproduct(w2)) add_tensor_term(r, {u, v}, s);
    if (l != r) return false;
  }
  return true;
}

// ---- cobar construction ----------------------------------------------------------

// Free tensor category on the desuspended words, truncated to monomials
// [c_1]..[c_m] of total letter count <= max_len. The truncation is a
// subcomplex; products leaving it are dropped, so Leibniz and associativity
// hold on pairs and triples whose total letter count stays within the bound.
struct CobarPresentation {
  AInfPresentation pres;  // non-unital
  int max_len = 1;
  std::vector<std::vector<int>> blocks;  // per generator: word ids of the coalgebra
  std::vector<int> letters;             // per generator: total letter count
};

inline CobarPresentation cobar(const CoCatPresentation& c, int max_len) {
  if (max_len < 1) throw std::invalid_argument("cobar: word length bound must be at least 1");
  max_len = std::min(max_len, c.max_len);
  CobarPresentation out;
  out.max_len = max_len;
  auto& p = out.pres;
  p.name = "cobar_" + c.name;
  p.field = c.field;
  const auto& bq = c.base.quiver;
  for (const auto& o : bq.objects()) p.quiver.add_object(o);
  std::map<std::vector<int>, int> mono_index;
  for (int n = 1; n <= max_len; ++n)
    for (const Chain& ch : bq.chains(n))
      for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        // bit i set: cut between letters i and i + 1
        std::vector<int> blk;
        std::size_t start = 0;
        std::string label;
        int deg = 0;
        for (int i = 0; i < n; ++i)
          if (i == n - 1 || (mask >> i & 1)) {
            Chain part(ch.begin() + start, ch.begin() + i + 1);
            const int w = c.word_id(part);
            blk.push_back(w);
            label += "[" + c.quiver.gen(w).label + "]";
            deg += c.degree(w) + 1;
            start = i + 1;
          }
        const int id = p.quiver.add_generator(label, bq.chain_source(ch), bq.chain_target(ch), deg);
        mono_index[blk] = id;
        out.blocks.push_back(blk);
        out.letters.push_back(n);
      }
  p.set_kmax(2);
  // d[c] = [b c] - sum (-1)^{|c'|} [c'][c''], extended as a derivation
  std::vector<std::map<std::vector<int>, Scalar>> dgen(c.words.size());
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    if (static_cast<int>(c.words[w].size()) > max_len) continue;
    for (const auto& [w2, s] : c.b[w]) add_tensor_term(dgen[w], {w2}, s);
    for (auto [u, v] : c.coproduct(static_cast<int>(w)))
      add_tensor_term(dgen[w], {u, v}, Scalar(-parity_sign(c.degree(u))));
  }
  for (int g = 0; g < p.quiver.num_gens(); ++g) {
    const auto& blk = out.blocks[g];
    Vec d;
    long before = 0;
    for (std::size_t i = 0; i < blk.size(); ++i) {
      for (const auto& [rep, s] : dgen[blk[i]]) {
        std::vector<int> m(blk.begin(), blk.begin() + i);
        m.insert(m.end(), rep.begin(), rep.end());
        m.insert(m.end(), blk.begin() + i + 1, blk.end());
        add_term(d, mono_index.at(m), Scalar(parity_sign(before)) * s);
      }
      before += c.degree(blk[i]) + 1;
    }
    if (!d.empty()) p.ops[1][{g}] = d;
  }
  for (int g = 0; g < p.quiver.num_gens(); ++g)
    for (int h = 0; h < p.quiver.num_gens(); ++h) {
      if (out.letters[g] + out.letters[h] > max_len) continue;
      if (p.quiver.gen(g).src != p.quiver.gen(h).tgt) continue;
      std::vector<int> m = out.blocks[g];
      m.insert(m.end(), out.blocks[h].begin(), out.blocks[h].end());
      p.ops[2][{g, h}] = basis_vec(mono_index.at(m));
    }
  return out;
}

// Stasheff residuals of the truncated cobar on chains of total letter count
// <= max_len; returns the first failing chain.
inline std::optional<Chain> cobar_window_failure(const CobarPresentation& c, int n_hi = 3) {
  for (int n = 1; n <= n_hi; ++n)
    for (const Chain& ch : c.pres.quiver.chains(n)) {
      int total = 0;
      for (int g : ch) total += c.letters[g];
      if (total > c.max_len) continue;
      if (!stasheff_residual(c.pres, ch).empty()) return ch;
    }
  return std::nullopt;
}

// ---- enveloping dg-category and its counit ------------------------------------

struct Envelope {
  PresPtr original;
  PresPtr env;
  int max_len = 1;
  // per generator of env: its blocks as chains of original generator ids
  // (empty for units)
  std::vector<std::vector<Chain>> blocks;
};

inline Envelope envelope(const PresPtr& d, int max_len) {
  if (!d->is_dg()) throw ValidationError("envelope: input must be a dg presentation");
  if (!is_augmented(*d))
    throw ValidationError("envelope: non-unit generators of '" + d->name +
                          "' do not span an ideal (a product has a unit component)");
  auto c = bar(*d, max_len);
  auto cb = cobar(c, max_len);
  std::map<std::string, std::string> unit_labels;
  for (int x = 0; x < d->quiver.num_objects(); ++x)
    unit_labels[d->quiver.objects()[x]] = d->quiver.gen(d->unit_gen(x)).label;
  Envelope e;
  e.original = d;
  e.max_len = max_len;
  auto u = augment(cb.pres, unit_labels);
  u.name = "U_" + d->name;
  e.env = std::make_shared<const AInfPresentation>(std::move(u));
  const int N = d->quiver.num_objects();
  e.blocks.assign(N, {});
  const auto& rq = c.base.quiver;
  for (const auto& blk : cb.blocks) {
    std::vector<Chain> chains;
    for (int w : blk) {
      Chain ch;
      for (int g : c.words[w]) ch.push_back(d->quiver.gen_index(rq.gen(g).label));
      chains.push_back(ch);
    }
    e.blocks.push_back(chains);
  }
  return e;
}

// gamma([v_1]..[v_k]) = v_1 o .. o v_k when every block is a single letter, else 0.
inline AInfFunctor gamma(const Envelope& e) {
  AInfFunctor f;
  f.name = "gamma_" + e.original->name;
  f.src = e.env;
  f.tgt = e.original;
  const auto& D = *e.original;
  for (int x = 0; x < D.quiver.num_objects(); ++x) f.obj_map.push_back(x);
  for (int g = 0; g < e.env->quiver.num_gens(); ++g) {
    if (e.env->is_unit_gen(g)) continue;
    const auto& blk = e.blocks[g];
    bool letters = true;
    for (const auto& ch : blk) letters = letters && ch.size() == 1;
    if (!letters) continue;
    Vec acc = basis_vec(blk.back()[0]);
    for (int i = static_cast<int>(blk.size()) - 2; i >= 0; --i) {
      Vec left = basis_vec(blk[i][0]);
      acc = D.apply(2, {&left, &acc});
    }
    if (!acc.empty()) f.set(1, {g}, acc);
  }
  return f;
}

// Functor equation for gamma on chains whose total letter count fits the
// envelope's bound; skipped chains set the truncated flag.
inline CheckReport check_gamma(const Envelope& e, const AInfFunctor& g, int n_hi = 3) {
  CheckReport r;
  r.n_lo = 1;
  r.n_hi = n_hi;
  const auto& U = e.env->quiver;
  for (int n = 1; n <= n_hi; ++n)
    for (const Chain& c : U.chains(n)) {
      std::size_t total = 0;
      for (int x : c)
        for (const auto& blk : e.blocks[x]) total += blk.size();
      if (static_cast<int>(total) > e.max_len) {
        r.truncated = true;
        continue;
      }
      Vec res = functor_residual(g, c);
      if (!res.empty()) {
        r.ok = false;
        r.fail_arity = n;
        r.fail_chain = c;
        r.residual = res;
        r.message = "gamma fails the functor equation on " + chain_str(U, c) + ": residual " +
                    vec_str(e.original->quiver, res);
        return r;
      }
    }
  return r;
}

}  // namespace ainf
