#pragma once

// Bulk enumeration of atoms and Thom-Sebastiani sums with per-case property
// checks. Cases are generated in a fixed order, evaluated on worker threads
// and reported in generation order.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "invpoly/classify.hpp"
#include "invpoly/cleave.hpp"
#include "invpoly/error.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"
#include "invpoly/json_io.hpp"
#include "invpoly/milnor.hpp"
#include "invpoly/symmetry.hpp"

namespace invpoly {

enum class Check { Identity, Signs, Minors, Torsion, TreeLength, Gorenstein, Oracle };

inline constexpr Check all_checks[] = {Check::Identity,   Check::Signs,      Check::Minors, Check::Torsion,
                                       Check::TreeLength, Check::Gorenstein, Check::Oracle};

inline std::string_view check_name(Check c) {
  switch (c) {
    case Check::Identity: return "identity";
    case Check::Signs: return "signs";
    case Check::Minors: return "minors";
    case Check::Torsion: return "torsion";
    case Check::TreeLength: return "tree-length";
    case Check::Gorenstein: return "gorenstein";
    case Check::Oracle: return "oracle";
  }
  return "?";
}

/// Upper end of the b range: a constant, or a_n + offset.
struct BBound {
  bool relative = false;
  Exponent value = 0;

  Exponent resolve(Exponent a_n) const { return relative ? a_n + value : value; }
  std::string str() const {
    if (!relative) return std::to_string(value);
    return value == 0 ? "an" : "an" + std::string(value > 0 ? "+" : "") + std::to_string(value);
  }
};

struct EnumerationSpec {
  std::size_t max_vars = 2;
  Exponent min_exp = 2;
  Exponent max_exp = 3;
  std::set<AtomKind> kinds{AtomKind::Fermat, AtomKind::Chain, AtomKind::Loop};
  Exponent b_min = 2;
  BBound b_max{true, 0};
  std::set<Check> checks{Check::Identity};
  std::size_t max_atoms = 1;               // Thom-Sebastiani sums of up to this many atoms
  std::optional<Integer> max_mu;           // drop sums with larger mu(w)
  std::size_t oracle_max_vars = 3;         // brute-force spot checks of the identity
  std::vector<BPolicy> strategies{BPolicy::min(), BPolicy::max()};
  MilnorLimits limits{};
  std::size_t jobs = 1;
};

inline void validate(const EnumerationSpec& s) {
  if (s.max_vars < 1) throw Error(Errc::Config, "max_vars must be at least 1");
  if (s.min_exp < 2) throw Error(Errc::Config, "min_exp must be at least 2");
  if (s.max_exp < s.min_exp) throw Error(Errc::Config, "max_exp must be at least min_exp");
  if (s.b_min < 2) throw Error(Errc::Config, "b must be at least 2");
  if (s.kinds.empty()) throw Error(Errc::Config, "no atom kinds selected");
  if (s.checks.empty()) throw Error(Errc::Config, "no checks selected");
  if (s.max_atoms < 1) throw Error(Errc::Config, "max_atoms must be at least 1");
  if (s.jobs < 1) throw Error(Errc::Config, "jobs must be at least 1");
}

inline std::set<AtomKind> parse_kinds(std::string_view list) {
  std::set<AtomKind> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (item == "fermat") out.insert(AtomKind::Fermat);
    else if (item == "chain") out.insert(AtomKind::Chain);
    else if (item == "loop") out.insert(AtomKind::Loop);
    else if (item == "all") out = {AtomKind::Fermat, AtomKind::Chain, AtomKind::Loop};
    else throw Error(Errc::Config, "unknown atom kind '" + std::string(item) + "'");
  }
  return out;
}

inline std::set<Check> parse_checks(std::string_view list) {
  std::set<Check> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (item == "all") {
      out.insert(std::begin(all_checks), std::end(all_checks));
      continue;
    }
    bool found = false;
    for (Check c : all_checks)
      if (check_name(c) == item) {
        out.insert(c);
        found = true;
      }
    if (!found) throw Error(Errc::Config, "unknown check '" + std::string(item) + "'");
  }
  return out;
}

/// "7", "an" or "an+2" / "an-1".
inline BBound parse_b_bound(std::string_view s) {
  BBound b;
  std::string_view num = s;
  if (s.substr(0, 2) == "an") {
    b.relative = true;
    num = s.substr(2);
    if (num.empty()) return b;
    if (num.front() == '+') num.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), b.value);
  if (num.empty() || ec != std::errc() || ptr != num.data() + num.size())
    throw Error(Errc::Config, "b bound must be an integer, 'an' or 'an+K': " + std::string(s));
  if (!b.relative && b.value < 2) throw Error(Errc::Config, "b bound must be at least 2");
  return b;
}

enum class Status { Pass, Fail, Skipped };

inline std::string_view status_name(Status s) {
  return s == Status::Pass ? "pass" : s == Status::Fail ? "fail" : "skipped";
}

struct VerificationRecord {
  std::string polynomial;
  std::string check;
  std::string expected;
  std::string actual;
  Status status = Status::Pass;
};

inline Json to_json(const VerificationRecord& r) {
  return Json{{"polynomial", r.polynomial},
              {"check", r.check},
              {"expected", r.expected},
              {"actual", r.actual},
              {"status", status_name(r.status)}};
}

inline std::string to_text(const VerificationRecord& r) {
  std::string s = std::string(status_name(r.status)) + "  " + r.check + "  " + r.polynomial;
  if (r.status == Status::Pass) return s + "  = " + r.actual;
  return s + "  expected " + r.expected + ", got " + r.actual;
}

struct EnumerationSummary {
  std::size_t pass = 0, fail = 0, skipped = 0;
  std::size_t total() const { return pass + fail + skipped; }
};

inline Json to_json(const EnumerationSummary& s) {
  return Json{{"summary", {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}, {"total", s.total()}}}};
}

// ---------------------------------------------------------------------------
// Case generation

/// Atoms in enumeration order: kind (fermat, chain, loop), size, then
/// exponents lexicographically. Chains and loops start at two variables.
inline std::vector<Atom> enumerate_atoms(const EnumerationSpec& s) {
  std::vector<Atom> out;
  auto tuples = [&](std::size_t n, const std::function<void(std::vector<Exponent>)>& f) {
    std::vector<Exponent> e(n, s.min_exp);
    while (true) {
      f(e);
      std::size_t i = n;
      while (i > 0 && e[i - 1] == s.max_exp) e[--i] = s.min_exp;
      if (i == 0) return;
      ++e[i - 1];
    }
  };
  for (AtomKind k : {AtomKind::Fermat, AtomKind::Chain, AtomKind::Loop}) {
    if (!s.kinds.count(k)) continue;
    if (k == AtomKind::Fermat) {
      for (Exponent r = s.min_exp; r <= s.max_exp; ++r) out.push_back(Atom::fermat(r));
      continue;
    }
    for (std::size_t n = 2; n <= s.max_vars; ++n)
      tuples(n, [&](std::vector<Exponent> e) {
        out.push_back(k == AtomKind::Chain ? Atom::chain(std::move(e)) : Atom::loop(std::move(e)));
      });
  }
  return out;
}

/// Thom-Sebastiani sum of atoms, variables laid out consecutively.
inline ExponentMatrix atom_sum(const std::vector<const Atom*>& atoms) {
  ExponentMatrix m = atom_matrix(*atoms.front());
  for (std::size_t i = 1; i < atoms.size(); ++i) m = thom_sebastiani(m, atom_matrix(*atoms[i]));
  return m;
}

namespace detail {

inline VerificationRecord record(std::string poly, Check c, const std::string& expected, const std::string& actual) {
  return {std::move(poly), std::string(check_name(c)), expected, actual,
          expected == actual ? Status::Pass : Status::Fail};
}

inline VerificationRecord failure(std::string poly, Check c, const std::string& expected, const Error& e) {
  return {std::move(poly), std::string(check_name(c)), expected, e.what(), Status::Fail};
}

inline std::string strategy_name(const BPolicy& p) {
  switch (p.kind) {
    case BPolicy::Kind::Max: return "max";
    case BPolicy::Kind::Gorenstein: return "gorenstein";
    case BPolicy::Kind::Fixed: return p.value == 2 ? "min" : "b=" + std::to_string(p.value);
  }
  return "?";
}

// mu(M^T) by brute force, or nullopt when the limits are hit.
inline std::optional<Integer> brute_mu_transpose(const ExponentMatrix& m, const MilnorLimits& limits) {
  try {
    return milnor_brute(transpose(m), limits).value;
  } catch (const Error& e) {
    if (e.code() == Errc::LimitExceeded) return std::nullopt;
    throw;
  }
}

inline void check_cleave(const Atom& atom, Exponent b, const EnumerationSpec& s, std::vector<VerificationRecord>& out) {
  const ExponentMatrix w = augment(atom, b);
  const std::string poly = to_text(w);
  const std::size_t n = atom.size();

  if (s.checks.count(Check::Minors)) {
    const auto expected = atom.kind == AtomKind::Loop ? loop_minor_closed_form(atom.exponents, b)
                                                      : chain_minor_closed_form(atom.exponents, b);
    const auto generic = maximal_minor_vector(w.to_int_matrix());
    out.push_back(record(poly, Check::Minors, "(" + join(expected) + ")", "(" + join(generic) + ")"));
  }
  if (s.checks.count(Check::Torsion)) {
    const auto d = maximal_minor_vector(w.to_int_matrix());
    const auto coker = cokernel_structure(w.to_int_matrix());
    out.push_back(record(poly, Check::Torsion, gcd_of(d).str(),
                         coker.free_rank == 0 ? coker.torsion_order().str()
                                              : "free rank " + std::to_string(coker.free_rank)));
  }

  const bool need_step = s.checks.count(Check::Identity) || (s.checks.count(Check::Signs) && b <= atom.exponents.back());
  if (!need_step) return;
  std::optional<CleaveStep> step;
  try {
    step = cleave_step(atom, b);
  } catch (const Error& e) {
    if (s.checks.count(Check::Identity)) out.push_back(failure(poly, Check::Identity, "cleave step", e));
    return;
  }

  if (s.checks.count(Check::Identity)) {
    const std::string expected = step->vgit.sum_d.str();
    std::string actual = Integer(step->mu_plus - step->mu_minus).str();
    if (n <= s.oracle_max_vars) {
      const auto plus = brute_mu_transpose(assemble(step->w_plus), s.limits);
      const auto minus = brute_mu_transpose(assemble(step->w_minus), s.limits);
      if (plus && minus && *plus - *minus != step->vgit.sum_d)
        actual += " (brute " + plus->str() + " - " + minus->str() + ")";
    }
    out.push_back(record(poly, Check::Identity, expected, actual));
  }
  if (s.checks.count(Check::Signs) && b <= atom.exponents.back()) {
    const bool loop = atom.kind == AtomKind::Loop;
    const bool ok = loop ? step->vgit.sum_d > 0 : step->vgit.sum_d >= 0;
    const std::string expected = loop ? "sum d > 0" : "sum d >= 0";
    out.push_back({poly, "signs", expected, ok ? expected : "sum d = " + step->vgit.sum_d.str(),
                   ok ? Status::Pass : Status::Fail});
  }
}

inline void check_gorenstein(const Atom& atom, const ExponentMatrix& m, std::vector<VerificationRecord>& out) {
  const std::string poly = to_text(m);
  const WeightSystem wt = weight_system(transpose(m));
  const bool divisible = divides_all(wt);
  std::string expected = divisible ? "tilting, terminal (" : "not gorenstein";
  if (divisible)
    for (std::size_t i = 0; i < wt.weights.size(); ++i) expected += (i ? ", " : "") + Integer(wt.degree / wt.weights[i]).str();
  if (divisible) expected += ")";
  try {
    const GorensteinReport r = gorenstein_reduce(m);
    std::string actual;
    if (r.tilting) {
      actual = "tilting, terminal (";
      for (std::size_t i = 0; i < r.terminal.size(); ++i) actual += (i ? ", " : "") + std::to_string(r.terminal[i]);
      actual += ")";
      for (const auto& g : r.steps)
        if (g.step.vgit.sum_d != 0) actual += " sum d " + g.step.vgit.sum_d.str();
    } else {
      actual = r.gorenstein ? "gorenstein without tilting" : "not gorenstein";
    }
    out.push_back(record(poly, Check::Gorenstein, expected, actual));
  } catch (const Error& e) {
    out.push_back(failure(poly, Check::Gorenstein, expected, e));
  }
  (void)atom;
}

inline void check_polynomial(const std::vector<const Atom*>& atoms, const EnumerationSpec& s,
                             std::vector<VerificationRecord>& out) {
  const ExponentMatrix m = atom_sum(atoms);
  const std::string poly = to_text(m);

  if (s.checks.count(Check::Oracle)) {
    const Integer closed = milnor_closed(classify(m), false);
    try {
      const MilnorReport r = milnor_brute(m, s.limits);
      out.push_back(record(poly, Check::Oracle, closed.str(), r.value.str()));
    } catch (const Error& e) {
      if (e.code() == Errc::LimitExceeded)
        out.push_back({poly, "oracle", closed.str(), e.what(), Status::Skipped});
      else
        out.push_back(failure(poly, Check::Oracle, closed.str(), e));
    }
  }
  if (s.checks.count(Check::TreeLength)) {
    const Integer mu = milnor_of_transpose(m);
    for (const auto& p : s.strategies) {
      const std::string label = poly + " [" + strategy_name(p) + "]";
      try {
        out.push_back(record(label, Check::TreeLength, mu.str(), decompose(m, p).total_exceptionals.str()));
      } catch (const Error& e) {
        out.push_back(failure(label, Check::TreeLength, mu.str(), e));
      }
    }
  }
  if (s.checks.count(Check::Gorenstein) && atoms.size() == 1) check_gorenstein(*atoms.front(), m, out);
}

}  // namespace detail

/// One unit of work: a polynomial (1..max_atoms atoms) or an (atom, b) cleave.
struct EnumerationCase {
  std::vector<const Atom*> atoms;
  Exponent b = 0;  // nonzero for cleave cases
};

inline std::vector<EnumerationCase> enumerate_cases(const EnumerationSpec& s, const std::vector<Atom>& atoms) {
  std::vector<EnumerationCase> out;
  const bool cleave_checks = s.checks.count(Check::Identity) || s.checks.count(Check::Signs) ||
                             s.checks.count(Check::Minors) || s.checks.count(Check::Torsion);
  const bool poly_checks =
      s.checks.count(Check::Oracle) || s.checks.count(Check::TreeLength) || s.checks.count(Check::Gorenstein);
  for (const auto& a : atoms) {
    if (poly_checks) out.push_back({{&a}, 0});
    if (cleave_checks && a.kind != AtomKind::Fermat)
      for (Exponent b = s.b_min; b <= s.b_max.resolve(a.exponents.back()); ++b) out.push_back({{&a}, b});
  }
  if (!poly_checks || s.max_atoms < 2) return out;

  // Multisets of 2..max_atoms atoms, indices non-decreasing.
  std::vector<Integer> mu(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) mu[i] = milnor_closed(atoms[i], false);
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, Integer)> rec = [&](std::size_t from, Integer prod) {
    if (idx.size() >= 2) {
      EnumerationCase c;
      for (auto i : idx) c.atoms.push_back(&atoms[i]);
      out.push_back(std::move(c));
    }
    if (idx.size() == s.max_atoms) return;
    for (std::size_t i = from; i < atoms.size(); ++i) {
      const Integer p = prod * mu[i];
      if (s.max_mu && p > *s.max_mu) continue;
      idx.push_back(i);
      rec(i, p);
      idx.pop_back();
    }
  };
  rec(0, 1);
  return out;
}

inline std::vector<VerificationRecord> run_case(const EnumerationCase& c, const EnumerationSpec& s) {
  std::vector<VerificationRecord> out;
  if (c.b != 0)
    detail::check_cleave(*c.atoms.front(), c.b, s, out);
  else
    detail::check_polynomial(c.atoms, s, out);
  return out;
}

/// Runs every case; `sink` receives records in case order.
inline EnumerationSummary run_enumeration(const EnumerationSpec& s,
                                          const std::function<void(const VerificationRecord&)>& sink = {}) {
  validate(s);
  const std::vector<Atom> atoms = enumerate_atoms(s);
  const std::vector<EnumerationCase> cases = enumerate_cases(s, atoms);
  std::vector<std::vector<VerificationRecord>> results(cases.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        results[i] = run_case(cases[i], s);
      } catch (const Error& e) {
        results[i] = {{to_text(atom_sum(cases[i].atoms)), "case", "no error", e.what(), Status::Fail}};
      }
    }
  };
  const std::size_t jobs = std::min(s.jobs, std::max<std::size_t>(cases.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  EnumerationSummary sum;
  for (const auto& rs : results)
    for (const auto& r : rs) {
      if (r.status == Status::Pass) ++sum.pass;
      else if (r.status == Status::Fail) ++sum.fail;
      else ++sum.skipped;
      if (sink) sink(r);
    }
  return sum;
}

}  // namespace invpoly
