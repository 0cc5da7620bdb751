#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/isomorphism.hpp"

namespace strata {

// One parameter point of a family with its own structure and expectations.
struct SpecialCase {
  std::pair<Cyclo, Cyclo> params;  // normalized (first nonzero = 1)
  std::string key;                 // as written, e.g. "(1:-1)"
  std::map<std::string, std::string> values;  // raw key=value lines
};

struct CatalogEntry {
  std::string name;
  int dim = 0;
  bool family = false;
  bool sigma2 = false;  // (p:q) ~ (q:p)
  std::map<std::string, std::string> values;
  std::vector<SpecialCase> specials;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
};

class Catalog {
 public:
  static Catalog load(const std::string& path);
  static Catalog load_text(const std::string& text, const std::string& origin = "<text>");
  static const Catalog& builtin();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& name) const;

  // instantiate by entry + optional parameters; applies special-value
  // overrides unless use_overrides is false
  Algebra instantiate(const CatalogEntry& e,
                      std::optional<std::pair<Cyclo, Cyclo>> params = std::nullopt,
                      bool use_overrides = true) const;

  // resolve references like "d73", "d75(1:-1)", "d86(1:z^4)"
  Algebra resolve(const std::string& ref) const;

  // non-special exact parameter samples for a family entry
  std::vector<std::pair<Cyclo, Cyclo>> generic_samples(const CatalogEntry& e,
                                                       int count) const;

 private:
  std::vector<CatalogEntry> entries_;
};

std::pair<Cyclo, Cyclo> parse_param_pair(const std::string& text);  // "(1:-1)"
std::pair<Cyclo, Cyclo> normalize_params(const Cyclo& p, const Cyclo& q);

struct CheckResult {
  std::string entry;
  std::string check;
  std::string expected;
  std::string computed;
  enum class Status { Pass, Fail, Skip } status = Status::Skip;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckResult::Status::Fail) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (c.status == CheckResult::Status::Fail) ++n;
    return n;
  }
};

struct VerifyOptions {
  int hmax = 3;
  int family_samples = 3;
  int iso_budget = 24;
  uint64_t seed = 0;
  bool with_table2 = true;
  bool with_h2_data = true;
  int jobs = 1;
};

VerificationReport verify_entry(const Catalog& cat, const CatalogEntry& e,
                                const VerifyOptions& opts = {});

// per-row check of a Table-2 polynomial presentation against its stratum
VerificationReport table2_check(const Catalog& cat, const CatalogEntry& e,
                                const VerifyOptions& opts = {});

// whole-catalog run: all entries (optionally one), plus cross-entry
// distinctness reporting; deterministic output order
VerificationReport verify_catalog(const Catalog& cat,
                                  const std::string& only_entry = "",
                                  const VerifyOptions& opts = {});

}  // namespace strata
