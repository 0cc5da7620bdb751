#include "strata/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "strata/cochain.hpp"
#include "strata/deformations.hpp"
#include "catalog_data.hpp"

namespace strata {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(trim(tok)));
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep = ';') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

std::pair<Cyclo, Cyclo> normalize_params(const Cyclo& p, const Cyclo& q) {
  if (!p.is_zero()) return {Cyclo(1), q / p};
  if (!q.is_zero()) return {Cyclo(0), Cyclo(1)};
  return {Cyclo(0), Cyclo(0)};
}

std::pair<Cyclo, Cyclo> parse_param_pair(const std::string& text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError("expected parameter pair (p:q), got " + text);
  t = t.substr(1, t.size() - 2);
  size_t colon = t.find(':');
  if (colon == std::string::npos)
    throw ParseError("expected ':' in parameter pair " + text);
  return {cyclo_eval(t.substr(0, colon)), cyclo_eval(t.substr(colon + 1))};
}

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str(), path);
}

Catalog Catalog::load_text(const std::string& text, const std::string& origin) {
  Catalog cat;
  CatalogEntry* cur = nullptr;
  SpecialCase* curspec = nullptr;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '[') {
      size_t close = line.find(']');
      if (close == std::string::npos) fail("unterminated header");
      std::string head = trim(line.substr(1, close - 1));
      std::istringstream hs(head);
      std::string kind, name;
      hs >> kind >> name;
      if ((kind != "entry" && kind != "family") || name.empty())
        fail("header must be [entry NAME] or [family NAME]");
      for (const auto& e : cat.entries_)
        if (e.name == name) fail("duplicate entry name " + name);
      CatalogEntry e;
      e.name = name;
      e.family = (kind == "family");
      cat.entries_.push_back(std::move(e));
      cur = &cat.entries_.back();
      curspec = nullptr;
      continue;
    }
    if (!cur) fail("content before first [entry]");
    if (line.rfind("special", 0) == 0) {
      size_t open = line.find('(');
      size_t close = line.find(')');
      if (open == std::string::npos || close == std::string::npos)
        fail("special header needs (p:q)");
      if (line.back() != '{') fail("special header must end with '{'");
      SpecialCase sc;
      sc.key = line.substr(open, close - open + 1);
      auto [p, q] = parse_param_pair(sc.key);
      sc.params = normalize_params(p, q);
      cur->specials.push_back(std::move(sc));
      curspec = &cur->specials.back();
      continue;
    }
    if (line == "}") {
      if (!curspec) fail("unmatched '}'");
      curspec = nullptr;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key");
    auto& target = curspec ? curspec->values : cur->values;
    if (target.count(key)) fail("duplicate key " + key);
    target[key] = value;
    if (!curspec) {
      if (key == "dim") cur->dim = std::stoi(value);
      if (key == "symmetry") cur->sigma2 = (value == "sigma2");
    }
  }
  // structural validation
  for (auto& e : cat.entries_) {
    if (e.dim < 1 || e.dim > 4)
      throw ParseError("entry " + e.name + ": dim out of range");
    std::vector<std::string> syms =
        e.family ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{};
    parse_structure_family(e.get("structure"), e.dim, syms);  // throws on bad text
    for (auto& sc : e.specials) {
      if (sc.values.count("structure"))
        parse_structure_family(sc.values.at("structure"), e.dim, {});
    }
  }
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = Catalog::load_text(kBuiltinCatalog, "<builtin>");
  return cat;
}

const CatalogEntry* Catalog::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

Algebra Catalog::instantiate(const CatalogEntry& e,
                             std::optional<std::pair<Cyclo, Cyclo>> params,
                             bool use_overrides) const {
  if (!e.family) {
    return parse_structure(e.get("structure"), e.dim);
  }
  if (!params)
    throw std::invalid_argument("entry " + e.name + " needs parameters");
  auto norm = normalize_params(params->first, params->second);
  if (use_overrides) {
    for (const auto& sc : e.specials) {
      bool hit = (sc.params.first == norm.first && sc.params.second == norm.second);
      if (!hit && e.sigma2) {
        auto swapped = normalize_params(norm.second, norm.first);
        hit = (sc.params.first == swapped.first && sc.params.second == swapped.second);
      }
      if (hit && sc.values.count("structure"))
        return parse_structure(sc.values.at("structure"), e.dim);
    }
  }
  return parse_structure(e.get("structure"), e.dim,
                         {{"p", params->first}, {"q", params->second}});
}

Algebra Catalog::resolve(const std::string& ref) const {
  std::string t = trim(ref);
  size_t open = t.find('(');
  std::string name = open == std::string::npos ? t : trim(t.substr(0, open));
  const CatalogEntry* e = find(name);
  if (!e) {
    // fall back to a raw structure text on dim 4
    if (t.find("p(") != std::string::npos) return parse_structure(t, 4);
    throw std::invalid_argument("unknown catalog entry: " + name);
  }
  if (open == std::string::npos) return instantiate(*e);
  auto [p, q] = parse_param_pair(t.substr(open));
  return instantiate(*e, std::pair<Cyclo, Cyclo>{p, q});
}

std::vector<std::pair<Cyclo, Cyclo>> Catalog::generic_samples(
    const CatalogEntry& e, int count) const {
  static const std::vector<std::pair<int, int>> pool = {
      {1, 2}, {1, 3}, {2, 5}, {3, 7}, {1, 5}, {2, 7}, {5, 4}, {3, 11}, {4, 9}};
  std::vector<std::pair<Cyclo, Cyclo>> out;
  for (const auto& [a, b] : pool) {
    if (int(out.size()) >= count) break;
    Cyclo p(a), q(b);
    auto norm = normalize_params(p, q);
    bool special = false;
    for (const auto& sc : e.specials) {
      if (sc.params.first == norm.first && sc.params.second == norm.second)
        special = true;
      if (e.sigma2) {
        auto swapped = normalize_params(norm.second, norm.first);
        if (sc.params.first == swapped.first && sc.params.second == swapped.second)
          special = true;
      }
    }
    if (!special) out.emplace_back(p, q);
  }
  return out;
}

namespace {

std::string ints_str(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

struct CaseData {
  std::string label;
  Algebra algebra;
  const std::map<std::string, std::string>* values;
  bool generic_sample = false;
};

void check_case(const Catalog& cat, const CatalogEntry& e, const CaseData& c,
                const VerifyOptions& opts, VerificationReport& rep) {
  auto add = [&](const std::string& check, const std::string& expected,
                 const std::string& computed, bool pass,
                 const std::string& note = "") {
    rep.checks.push_back({c.label, check, expected, computed,
                          pass ? CheckResult::Status::Pass
                               : CheckResult::Status::Fail,
                          note});
  };
  const auto& vals = *c.values;
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = vals.find(key);
    if (it != vals.end()) return it->second;
    if (c.generic_sample || &vals == &e.values) {
      auto it2 = e.values.find(key);
      if (it2 != e.values.end()) return it2->second;
    }
    return std::nullopt;
  };

  auto assoc = is_associative(c.algebra);
  add("associative", "true", assoc.associative ? "true" : "false",
      assoc.associative);
  auto filt = power_subspace_dims(c.algebra);
  add("nilpotent", "true", filt.nilpotent ? "true" : "false", filt.nilpotent);
  if (auto comm = get("commutative")) {
    bool expect = (*comm == "true");
    bool got = is_commutative(c.algebra);
    add("commutative", *comm, got ? "true" : "false", got == expect);
  }
  if (auto kern = get("kernel")) {
    int expect = std::stoi(*kern);
    int got = annihilator_kernel(c.algebra).dim();
    add("kernel_dim", *kern, std::to_string(got), got == expect);
  }
  if (auto h = get("h")) {
    auto expect = parse_int_list(*h);
    auto prof = cohomology_dims(c.algebra, opts.hmax);
    std::vector<int> want(expect.begin(),
                          expect.begin() + std::min<size_t>(expect.size(),
                                                            size_t(opts.hmax) + 1));
    std::vector<int> got(prof.dims.begin(),
                         prof.dims.begin() + std::min<size_t>(prof.dims.size(),
                                                              want.size()));
    add("cohomology", ints_str(want), ints_str(got), got == want);
  }
  if (auto core_name = get("core")) {
    Algebra core = core_of(c.algebra);
    const CatalogEntry* ce = cat.find(*core_name);
    std::optional<Algebra> target;
    if (ce) {
      target = cat.instantiate(*ce);
    } else if (core_name->find('(') != std::string::npos) {
      target = cat.resolve(*core_name);
    }
    if (!target) {
      add("core", *core_name, "unknown target", false);
    } else if (core.dim() != target->dim()) {
      add("core", *core_name, "dim " + std::to_string(core.dim()), false);
    } else {
      IsoOptions io;
      io.budget = opts.iso_budget;
      io.seed = opts.seed;
      io.hmax = 2;
      auto verdict = are_isomorphic(core, *target, io);
      add("core", *core_name,
          verdict.tag == IsoVerdict::Tag::Witness ? "isomorphic (witness)"
          : verdict.tag == IsoVerdict::Tag::Refuted ? "refuted"
                                                    : "inconclusive",
          verdict.tag == IsoVerdict::Tag::Witness);
    }
  }
  if (auto alt = [&]() -> std::optional<std::string> {
        auto it = vals.find("alt_structure");
        if (it != vals.end()) return it->second;
        return std::nullopt;
      }()) {
    Algebra alt_alg = parse_structure(*alt, e.dim);
    bool assoc2 = is_associative(alt_alg).associative;
    add("alt_structure_associative", "true", assoc2 ? "true" : "false", assoc2);
    if (auto h = get("h")) {
      auto expect = parse_int_list(*h);
      auto prof = cohomology_dims(alt_alg, opts.hmax);
      std::vector<int> want(expect.begin(),
                            expect.begin() + std::min<size_t>(expect.size(),
                                                              size_t(opts.hmax) + 1));
      std::vector<int> got(prof.dims.begin(), prof.dims.begin() + want.size());
      add("alt_structure_cohomology", ints_str(want), ints_str(got), got == want);
    }
    IsoOptions io;
    io.budget = opts.iso_budget;
    io.seed = opts.seed;
    io.hmax = 2;
    auto verdict = are_isomorphic(c.algebra, alt_alg, io);
    add("alt_structure_isomorphic", "witness",
        verdict.tag == IsoVerdict::Tag::Witness ? "witness" : "not found",
        verdict.tag == IsoVerdict::Tag::Witness,
        "both printed candidates describe the same algebra");
  }
}

}  // namespace

VerificationReport verify_entry(const Catalog& cat, const CatalogEntry& e,
                                const VerifyOptions& opts) {
  VerificationReport rep;
  std::vector<CaseData> cases;
  if (!e.family) {
    cases.push_back({e.name, cat.instantiate(e), &e.values, false});
  } else {
    for (const auto& pq : cat.generic_samples(e, opts.family_samples)) {
      std::ostringstream label;
      label << e.name << "(" << pq.first.str() << ":" << pq.second.str() << ")";
      cases.push_back({label.str(),
                       cat.instantiate(e, pq, /*use_overrides=*/false),
                       &e.values, true});
    }
    for (const auto& sc : e.specials) {
      cases.push_back({e.name + sc.key,
                       cat.instantiate(e, sc.params), &sc.values, false});
    }
  }
  for (const auto& c : cases) check_case(cat, e, c, opts, rep);

  if (e.get("self_opposite") == "true") {
    Algebra a = e.family
                    ? cat.instantiate(e, cat.generic_samples(e, 1).at(0))
                    : cat.instantiate(e);
    IsoOptions io;
    io.budget = opts.iso_budget;
    io.seed = opts.seed;
    io.hmax = 2;
    auto verdict = are_isomorphic(a, opposite(a), io);
    rep.checks.push_back(
        {e.name, "self_opposite", "witness",
         verdict.tag == IsoVerdict::Tag::Witness ? "witness" : "not found",
         verdict.tag == IsoVerdict::Tag::Witness ? CheckResult::Status::Pass
                                                 : CheckResult::Status::Fail,
         ""});
  }
  if (opts.with_table2) {
    auto t2 = table2_check(cat, e, opts);
    rep.checks.insert(rep.checks.end(), t2.checks.begin(), t2.checks.end());
  }
  if (opts.with_h2_data && e.has("h2_basis")) {
    Algebra a = cat.instantiate(e);
    std::vector<Cochain> basis;
    for (const auto& txt : split_list(e.get("h2_basis")))
      basis.push_back(Cochain::parse2(txt, e.dim));
    auto h2rep = verify_h2_data(a, basis);
    rep.checks.push_back({e.name, "h2_basis",
                          "cocycles, no coboundary, independent basis",
                          h2rep.pass() ? "verified" : "failed",
                          h2rep.pass() ? CheckResult::Status::Pass
                                       : CheckResult::Status::Fail,
                          ""});
  }
  return rep;
}

VerificationReport table2_check(const Catalog& cat, const CatalogEntry& e,
                                const VerifyOptions& opts) {
  VerificationReport rep;
  auto run_one = [&](const std::string& label, const std::string& text,
                     const Algebra& target,
                     const std::string& note) {
    Algebra pres = parse_structure(text, 4);
    bool assoc = is_associative(pres).associative;
    bool comm = is_commutative(pres);
    rep.checks.push_back({label, "table2_associative", "true",
                          assoc ? "true" : "false",
                          assoc ? CheckResult::Status::Pass
                                : CheckResult::Status::Fail,
                          note});
    rep.checks.push_back({label, "table2_commutative", "true",
                          comm ? "true" : "false",
                          comm ? CheckResult::Status::Pass
                               : CheckResult::Status::Fail,
                          note});
    IsoOptions io;
    io.budget = opts.iso_budget;
    io.seed = opts.seed;
    io.hmax = 2;
    if (pres.dim() == target.dim()) {
      auto verdict = are_isomorphic(pres, target, io);
      rep.checks.push_back(
          {label, "table2_isomorphic", "witness",
           verdict.tag == IsoVerdict::Tag::Witness ? "witness" : "not found",
           verdict.tag == IsoVerdict::Tag::Witness ? CheckResult::Status::Pass
                                                   : CheckResult::Status::Fail,
           note});
    }
  };
  if (e.has("table2_structure")) {
    run_one(e.name, e.get("table2_structure"), cat.instantiate(e),
            e.get("table2_note"));
  }
  for (const auto& sc : e.specials) {
    auto it = sc.values.find("table2_structure");
    if (it == sc.values.end()) continue;
    auto noteit = sc.values.find("table2_note");
    run_one(e.name + sc.key, it->second, cat.instantiate(e, sc.params),
            noteit == sc.values.end() ? "" : noteit->second);
  }
  return rep;
}

VerificationReport verify_catalog(const Catalog& cat,
                                  const std::string& only_entry,
                                  const VerifyOptions& opts) {
  VerificationReport rep;
  std::vector<const CatalogEntry*> list;
  for (const auto& e : cat.entries()) {
    if (!only_entry.empty() && e.name != only_entry) continue;
    list.push_back(&e);
  }
  std::vector<VerificationReport> parts(list.size());
  if (opts.jobs <= 1) {
    for (size_t i = 0; i < list.size(); ++i)
      parts[i] = verify_entry(cat, *list[i], opts);
  } else {
    // fixed-size pool over an atomic work index
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    std::mutex m;
    for (int t = 0; t < opts.jobs; ++t) {
      threads.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= list.size()) break;
          VerificationReport r = verify_entry(cat, *list[i], opts);
          std::lock_guard<std::mutex> lk(m);
          parts[i] = std::move(r);
        }
      });
    }
    for (auto& th : threads) th.join();
  }
  for (auto& p : parts)
    rep.checks.insert(rep.checks.end(), p.checks.begin(), p.checks.end());

  if (only_entry.empty()) {
    // distinctness across 4-dim strata at generic/primary parameters
    struct Rep {
      std::string label;
      Algebra alg;
      Fingerprint fp;
    };
    std::vector<Rep> reps;
    for (const auto* e : list) {
      if (e->dim != 4 || e->get("structure").empty()) continue;
      if (e->name == "d0") continue;
      Algebra a = e->family
                      ? cat.instantiate(*e, cat.generic_samples(*e, 1).at(0),
                                        false)
                      : cat.instantiate(*e);
      reps.push_back({e->name, a, fingerprint(a, true, opts.hmax)});
    }
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i + 1; j < reps.size(); ++j) {
        if (!(reps[i].fp == reps[j].fp)) continue;
        IsoOptions io;
        io.budget = opts.iso_budget;
        io.seed = opts.seed;
        auto verdict = are_isomorphic(reps[i].alg, reps[j].alg, io);
        bool merged = verdict.tag == IsoVerdict::Tag::Witness;
        rep.checks.push_back(
            {reps[i].label + "/" + reps[j].label, "distinctness",
             "distinct strata", merged ? "isomorphic!" : "fingerprints collide",
             merged ? CheckResult::Status::Fail : CheckResult::Status::Pass,
             merged ? "" : "reported for manual review"});
      }
  }
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     if (a.entry != b.entry) return a.entry < b.entry;
                     return a.check < b.check;
                   });
  return rep;
}

}  // namespace strata
