// vse: command-line front end for the VSE invariant library.

#include <vse/vse.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kBudget = 3, kInternal = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

vse::LinkDiagram read_link(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw InputError("cannot open link file '" + path + "'");
  return vse::load_link(path);
}

struct Args {
  std::string link, link_a, link_b, out, reference, level = "inf", fallback;
  std::optional<std::uint32_t> k;
  bool full = false, oracle = false, verbose = false, no_cache = false;
  unsigned threads = 1;
  std::optional<std::string> max_states;
  std::optional<double> time_budget;
  std::size_t n = 0;
};

vse::Level statesum_level(const Args& a) { return a.full ? vse::Level::full() : vse::Level::truncated(*a.k); }

vse::EtaOptions eta_options(const Args& a) {
  vse::EtaOptions o;
  o.threads = a.threads;
  if (a.max_states) o.max_states = vse::Integer(*a.max_states);
  return o;
}

vse::BasisStore make_store(const Args& a) {
  vse::BasisStoreOptions o;
  o.use_cache = !a.no_cache;
  if (a.time_budget)
    o.buchberger.time_budget = std::chrono::milliseconds(static_cast<long long>(*a.time_budget * 1000));
  if (!a.fallback.empty()) o.fallback_reference = a.fallback;
  if (a.verbose) o.buchberger.trace = [](const std::string& s) { std::cerr << "gb: " << s << "\n"; };
  return vse::BasisStore(std::move(o));
}

void print_notes(const vse::BasisStore& store) {
  for (const auto& n : store.notes()) std::cerr << "note: " << n << "\n";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int cmd_statesum(const Args& a) {
  auto d = read_link(a.link);
  vse::StateSumOptions o;
  o.threads = a.threads;
  if (a.max_states) o.max_states = vse::Integer(*a.max_states);
  std::cout << vse::format(vse::state_sum(d, statesum_level(a), o)) << "\n";
  return kOk;
}

void print_result(const std::string& label, const vse::InvariantResult& r) {
  std::cout << label << vse::format(r.value) << "\n";
}

int cmd_eta(const Args& a) {
  auto level = vse::Level::parse(a.level);
  auto d = read_link(a.link);
  auto store = make_store(a);
  auto r = vse::eta(d, level, store, eta_options(a), a.link);
  std::cout << "eta_" << level.to_string() << ": " << vse::format(r.value) << "\n";
  std::cout << "states: " << r.state_count.get_str() << "\n";
  if (r.provisional) std::cout << "basis: provisional (reference fallback)\n";
  print_notes(store);
  return kOk;
}

int cmd_compare(const Args& a) {
  auto level = vse::Level::parse(a.level);
  auto da = read_link(a.link_a);
  auto db = read_link(a.link_b);
  auto store = make_store(a);
  auto c = vse::compare(da, db, level, store, eta_options(a));
  std::cout << to_string(c.verdict) << "\n";
  print_result("a: ", c.a);
  print_result("b: ", c.b);
  if (c.a.provisional) std::cout << "basis: provisional (reference fallback)\n";
  print_notes(store);
  return kOk;
}

int cmd_relations(const Args& a) {
  std::string text;
  for (const auto& r : vse::generate_all_relations()) text += vse::format(r) + "\n";
  emit(text, a.out);
  return kOk;
}

int cmd_gb(const Args& a) {
  auto level = vse::Level::parse(a.level);
  auto store = make_store(a);
  const auto& b = store.get(level);
  emit(vse::format_basis(b), a.out);
  if (b.provisional) std::cerr << "note: basis is provisional (reference fallback)\n";
  print_notes(store);
  if (a.reference.empty()) return kOk;

  if (!std::filesystem::is_regular_file(a.reference)) throw InputError("cannot open '" + a.reference + "'");
  auto ref = vse::load_named_polynomials(a.reference);
  bool ok = ref.failures().empty();
  for (const auto* f : ref.failures()) std::cerr << "reference " << f->name << ": unparseable: " << f->error << "\n";
  auto report = vse::verify_against_reference(b, ref.parsed(), ref.parsed_names());
  for (const auto& c : report.reference_in_basis)
    std::cerr << "reference " << c.name << " in basis: " << (c.passed ? "PASS" : "FAIL") << "\n";
  for (const auto& c : report.basis_in_reference)
    std::cerr << c.name << " in reference: " << (c.passed ? "PASS" : "FAIL") << "\n";
  ok = ok && report.all_passed();
  std::cerr << "verify: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kInput;
}

int cmd_bracket(const Args& a) {
  auto d = read_link(a.link);
  vse::StateSumOptions o;
  o.threads = a.threads;
  o.max_states = a.max_states ? vse::Integer(*a.max_states) : vse::kDefaultFullStateBudget;
  auto value = vse::bracket_specialize(vse::state_sum(d, vse::Level::full(), o));
  std::cout << vse::format(value) << "\n";
  if (!a.oracle) return kOk;
  auto reference = vse::kauffman_bracket_oracle(d);
  bool same = reference == value;
  std::cout << "oracle: " << vse::format(reference) << "\n" << (same ? "match" : "MISMATCH") << "\n";
  return same ? kOk : kInternal;
}

int cmd_count(const Args& a) {
  std::cout << vse::count_states(a.n, vse::Level::parse(a.level)).get_str() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VSE link invariant: state sums, relation ideal, Groebner bases, normal forms"};
  app.require_subcommand(1, 1);
  Args a;

  auto threads_opt = [&](CLI::App* s) { s->add_option("--threads", a.threads, "worker threads, 0 = all cores"); };
  auto budget_opt = [&](CLI::App* s) { s->add_option("--max-states", a.max_states, "state budget"); };
  auto gb_opts = [&](CLI::App* s) {
    s->add_flag("--no-cache", a.no_cache, "do not read or write the basis cache");
    s->add_option("--time-budget", a.time_budget, "seconds allowed for computing B_inf");
    s->add_option("--fallback", a.fallback, "reference basis file used if the time budget is exceeded");
    s->add_flag("-v,--verbose", a.verbose, "report Buchberger progress on stderr");
  };

  auto* statesum = app.add_subcommand("statesum", "print the state sum of a diagram");
  statesum->add_option("--link", a.link, "link file")->required();
  auto* k_opt = statesum->add_option("--k", a.k, "truncation level");
  auto* full_opt = statesum->add_flag("--full", a.full, "full 3^n expansion");
  k_opt->excludes(full_opt);
  full_opt->excludes(k_opt);
  threads_opt(statesum);
  budget_opt(statesum);

  auto* eta = app.add_subcommand("eta", "print the invariant eta_k and its state count");
  eta->add_option("--link", a.link, "link file")->required();
  eta->add_option("--k", a.level, "level: K or inf")->required();
  threads_opt(eta);
  budget_opt(eta);
  gb_opts(eta);

  auto* compare = app.add_subcommand("compare", "compare two diagrams at one level");
  compare->add_option("--a", a.link_a, "first link file")->required();
  compare->add_option("--b", a.link_b, "second link file")->required();
  compare->add_option("--k", a.level, "level: K or inf")->required();
  threads_opt(compare);
  budget_opt(compare);
  gb_opts(compare);

  auto* relations = app.add_subcommand("relations", "print the distinct move relations");
  relations->add_option("--out", a.out, "write to FILE instead of stdout");

  auto* gb = app.add_subcommand("gb", "compute or load a level basis");
  gb->add_option("--k", a.level, "level: K or inf")->required();
  gb->add_option("--out", a.out, "write to FILE instead of stdout");
  gb->add_option("--verify-reference", a.reference, "check mutual membership with a 'name: poly' file");
  gb_opts(gb);

  auto* bracket = app.add_subcommand("bracket", "print the bracket specialization of the full state sum");
  bracket->add_option("--link", a.link, "link file")->required();
  bracket->add_flag("--oracle", a.oracle, "cross-check against the independent bracket oracle");
  threads_opt(bracket);
  budget_opt(bracket);

  auto* count = app.add_subcommand("count", "number of surviving states for n crossings at level k");
  count->add_option("--n", a.n, "crossings")->required();
  count->add_option("--k", a.level, "level: K or inf")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (statesum->parsed() && !a.k && !a.full) {
    std::cerr << "statesum: one of --k or --full is required\n" << statesum->help();
    return kUsage;
  }

  try {
    if (statesum->parsed()) return cmd_statesum(a);
    if (eta->parsed()) return cmd_eta(a);
    if (compare->parsed()) return cmd_compare(a);
    if (relations->parsed()) return cmd_relations(a);
    if (gb->parsed()) return cmd_gb(a);
    if (bracket->parsed()) return cmd_bracket(a);
    if (count->parsed()) return cmd_count(a);
  } catch (const vse::StateBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const vse::OracleBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const vse::GroebnerTimeout& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const vse::DiagramParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const vse::InvalidDiagram& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const vse::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
