// invpoly: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 not invertible, 4 limits / configuration / usage.

#include <cstdio>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "invpoly/invpoly.hpp"

using namespace invpoly;

namespace {

enum Exit { Ok = 0, VerifyFail = 1, ParseFail = 2, NotInvertibleExit = 3, ConfigFail = 4 };

int exit_code(Errc c) {
  switch (c) {
    case Errc::Parse:
    case Errc::ZeroCoefficient:
    case Errc::InvalidMatrix:
      return ParseFail;
    case Errc::NotInvertible:
    case Errc::NonSquare:
    case Errc::SingularMatrix:
    case Errc::NotQuasihomogeneous:
    case Errc::NotIsolated:
      return NotInvertibleExit;
    case Errc::SignConventionViolated:
    case Errc::ClosedFormMismatch:
    case Errc::IdentityViolated:
    case Errc::LengthMismatch:
    case Errc::NonzeroSumD:
    case Errc::GorensteinDivisibility:
    case Errc::TerminalMismatch:
      return VerifyFail;
    default:
      return ConfigFail;
  }
}

struct Options {
  std::string input;
  std::string format = "json";
};

ExponentMatrix read_input(const std::string& arg) {
  std::string text = arg;
  if (arg == "-") text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  ParsedPolynomial p = parse_input(text);
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(p.matrix);
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string weights_text(const WeightSystem& w) {
  return "(" + join(w.weights) + "), d = " + w.degree.str();
}

std::string group_text(const GroupStructure& g) {
  std::string s = "free rank " + std::to_string(g.free_rank) + ", torsion ";
  if (g.torsion_orders.empty()) return s + "trivial";
  std::string parts;
  for (const auto& t : g.torsion_orders) parts += (parts.empty() ? "Z/" : " x Z/") + t.str();
  return s + parts + " (order " + g.torsion_order_total.str() + ")";
}

int cmd_classify(const Options& o) {
  const ExponentMatrix m = read_input(o.input);
  const Classification c = classify(m);
  const WeightSystem w = weight_system(m), wt = weight_system(transpose(m));
  const GroupStructure g = gamma_structure(m);
  Json j{{"polynomial", to_text(m)}, {"matrix", m}};
  j["atoms"] = to_json(c)["atoms"];
  j["weights"] = to_json(w);
  j["transpose_weights"] = to_json(wt);
  j["gamma"] = to_json(g);
  std::string text = "polynomial " + to_text(m) + "\n";
  for (const auto& a : c.atoms) text += "  " + describe(a) + "\n";
  text += "weights " + weights_text(w) + "\n";
  text += "transpose weights " + weights_text(wt) + "\n";
  text += "gamma " + group_text(g) + "\n";
  emit(o, j, text);
  return Ok;
}

int cmd_milnor(const Options& o, bool brute, bool of_transpose) {
  const ExponentMatrix m = read_input(o.input);
  MilnorReport r;
  if (brute) {
    r = milnor_brute(of_transpose ? transpose(m) : m, limits_from_env());
  } else {
    r.value = milnor_closed(classify(m), of_transpose);
  }
  Json j = to_json(r);
  std::string text = std::string(of_transpose ? "mu(w^T) = " : "mu(w) = ") + r.value.str() + " (" +
                     std::string(method_name(r.method)) + ")\n";
  if (r.socle_degree) {
    text += "socle degree " + std::to_string(*r.socle_degree) + ", graded dims";
    for (auto d : r.graded_dims) text += " " + std::to_string(d);
    text += "\n";
  }
  emit(o, j, text);
  return Ok;
}

int cmd_symmetry(const Options& o) {
  const ExponentMatrix m = read_input(o.input);
  const GroupStructure g = gamma_structure(m);
  emit(o, to_json(g), "gamma " + group_text(g) + "\n");
  return Ok;
}

int cmd_cleave(const Options& o, Exponent b) {
  const ExponentMatrix m = read_input(o.input);
  const Classification c = classify(m);
  if (c.atoms.size() != 1)
    throw Error(Errc::UnsupportedCase, "cleave takes a single chain or loop; got " +
                                           std::to_string(c.atoms.size()) + " atoms");
  const CleaveStep s = cleave_step(c.atoms.front(), b);
  Json j = to_json(s);
  j["atom"] = to_json(c.atoms.front());
  emit(o, j, "atom " + describe(c.atoms.front()) + "\n" + to_text(s));
  return Ok;
}

int cmd_decompose(const Options& o, const std::string& strategy) {
  const ExponentMatrix m = read_input(o.input);
  BPolicy p = strategy == "max" ? BPolicy::max() : strategy == "gorenstein" ? BPolicy::gorenstein() : BPolicy::min();
  const DecompositionTree t = decompose(m, p);
  if (o.format == "dot")
    std::cout << to_dot(t);
  else
    emit(o, to_json(t), to_text(t));
  return Ok;
}

int cmd_gorenstein(const Options& o) {
  const ExponentMatrix m = read_input(o.input);
  const GorensteinReport r = gorenstein_reduce(m);
  emit(o, to_json(r), to_text(r));
  return Ok;
}

struct EnumerateArgs {
  std::string kinds = "fermat,chain,loop";
  std::size_t max_vars = 2;
  Exponent min_exp = 2;
  Exponent max_exp = 3;
  std::string b_max = "an";
  std::string checks = "identity";
  std::size_t jobs = 1;
  std::size_t max_atoms = 1;
  long long max_mu = 0;
  bool failures_only = false;
};

int cmd_enumerate(const Options& o, const EnumerateArgs& a) {
  EnumerationSpec s;
  s.kinds = parse_kinds(a.kinds);
  s.max_vars = a.max_vars;
  s.min_exp = a.min_exp;
  s.max_exp = a.max_exp;
  s.b_max = parse_b_bound(a.b_max);
  s.checks = parse_checks(a.checks);
  s.jobs = a.jobs;
  s.max_atoms = a.max_atoms;
  if (a.max_mu > 0) s.max_mu = Integer(a.max_mu);
  s.limits = limits_from_env();
  const EnumerationSummary sum = run_enumeration(s, [&](const VerificationRecord& r) {
    if (a.failures_only && r.status == Status::Pass) return;
    if (o.format == "json")
      std::cout << to_json(r).dump() << "\n";
    else
      std::cout << to_text(r) << "\n";
  });
  if (o.format == "json")
    std::cout << to_json(sum).dump() << "\n";
  else
    std::cout << "pass " << sum.pass << ", fail " << sum.fail << ", skipped " << sum.skipped << "\n";
  return sum.fail == 0 ? Ok : VerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invertible polynomials: classification, Milnor numbers, symmetry groups and cleave decompositions.\n"
               "Polynomials are given as text (\"x1^2*x2 + x2^3\") or as JSON {\"monomials\": [[2,1],[0,3]]};\n"
               "'-' reads standard input. INVPOLY_LIMITS=max_monomials=N,max_socle=S bounds the brute-force\n"
               "Milnor oracle."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format: json or text (decompose also accepts dot)")
      ->check(CLI::IsMember({"json", "text", "dot"}));

  auto poly_arg = [&](CLI::App* sub) { sub->add_option("polynomial", o.input, "Polynomial text or JSON, or '-'")->required(); };

  auto* classify_cmd = app.add_subcommand("classify", "Atoms, weight systems of w and w^T, and the group Gamma_w");
  poly_arg(classify_cmd);

  bool brute = false, of_transpose = false;
  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number (closed form unless --brute)");
  poly_arg(milnor_cmd);
  milnor_cmd->add_flag("--brute", brute, "Graded Jacobian ring computation instead of the closed form");
  milnor_cmd->add_flag("--transpose", of_transpose, "Milnor number of the transpose polynomial");

  auto* symmetry_cmd = app.add_subcommand("symmetry", "Structure of the maximal diagonal symmetry group");
  poly_arg(symmetry_cmd);

  Exponent b = 2;
  auto* cleave_cmd = app.add_subcommand("cleave", "One cleave step of a single chain or loop");
  poly_arg(cleave_cmd);
  cleave_cmd->add_option("--b", b, "Exponent of the new variable (>= 2)")->required();

  std::string strategy = "min";
  auto* decompose_cmd = app.add_subcommand("decompose", "Recursive decomposition tree");
  poly_arg(decompose_cmd);
  decompose_cmd->add_option("--strategy", strategy, "b at each cleave: min (2), max (a_n) or gorenstein (d^T/r_n)")
      ->check(CLI::IsMember({"min", "max", "gorenstein"}));

  auto* gorenstein_cmd = app.add_subcommand("gorenstein", "Gorenstein reduction to a Fermat sum");
  poly_arg(gorenstein_cmd);

  EnumerateArgs ea;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate atoms and check properties on each case");
  enumerate_cmd->add_option("--kinds", ea.kinds, "Comma list of fermat, chain, loop (or all)");
  enumerate_cmd->add_option("--max-vars", ea.max_vars, "Largest number of variables per atom");
  enumerate_cmd->add_option("--min-exp", ea.min_exp, "Smallest exponent (>= 2)");
  enumerate_cmd->add_option("--max-exp", ea.max_exp, "Largest exponent");
  enumerate_cmd->add_option("--b-max", ea.b_max, "Largest b: an integer, 'an' or 'an+K'");
  enumerate_cmd->add_option("--checks", ea.checks,
                            "Comma list of identity, signs, minors, torsion, tree-length, gorenstein, oracle (or all)");
  enumerate_cmd->add_option("--jobs", ea.jobs, "Worker threads");
  enumerate_cmd->add_option("--max-atoms", ea.max_atoms, "Also check Thom-Sebastiani sums of up to this many atoms");
  enumerate_cmd->add_option("--max-mu", ea.max_mu, "Skip sums whose Milnor number exceeds this (0: no bound)");
  enumerate_cmd->add_flag("--failures-only", ea.failures_only, "Print only failed and skipped records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : ConfigFail;
  }

  try {
    if (o.format == "dot" && !decompose_cmd->parsed())
      throw Error(Errc::Config, "dot output is only available for decompose");
    if (classify_cmd->parsed()) return cmd_classify(o);
    if (milnor_cmd->parsed()) return cmd_milnor(o, brute, of_transpose);
    if (symmetry_cmd->parsed()) return cmd_symmetry(o);
    if (cleave_cmd->parsed()) return cmd_cleave(o, b);
    if (decompose_cmd->parsed()) return cmd_decompose(o, strategy);
    if (gorenstein_cmd->parsed()) return cmd_gorenstein(o);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o, ea);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return ConfigFail;
}
