#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalog.hpp"
#include "chief_series.hpp"
#include "labeling.hpp"
#include "parallel.hpp"
#include "subgroup_lattice.hpp"
#include "verification.hpp"

namespace sgel {

inline constexpr int bundle_schema_version = 1;

struct AnalyzeOptions {
  bool dual = false;
  bool verify = true;
  std::size_t threads = 1;
  std::size_t max_order = default_max_order;
  std::size_t max_subgroups = default_max_subgroups;
  /// Optional user chief series, "[gens],[gens],..." (see parse_series).
  std::optional<std::string> series;
};

struct Verdicts {
  ELReport el;
  std::optional<ELReport> el_dual;
  DescentVerdict descent;
  std::optional<DescentVerdict> descent_dual;
  MoebiusVerdict moebius_identity;
  CheckResult projections;
  std::optional<CheckResult> projections_dual;
  CheckResult coarse_skeleton;
  CheckResult left_modular;

  bool pass() const {
    return el.pass && (!el_dual || el_dual->pass) && descent.pass &&
           (!descent_dual || descent_dual->pass) && moebius_identity.pass && projections.pass &&
           (!projections_dual || projections_dual->pass) && coarse_skeleton.pass && left_modular.pass;
  }
};

struct Analysis {
  GroupSpec spec;
  std::shared_ptr<const SubgroupLattice> lattice;
  ChiefSeries series;
  std::shared_ptr<const LabeledLattice> primal;
  std::shared_ptr<const LabeledLattice> dual;
  long long mu = 0;
  std::vector<Chain> complements;
  std::vector<Chain> descending;       // ascending form, sorted
  std::vector<Chain> dual_descending;  // ascending form, sorted
  std::optional<Verdicts> verdicts;

  bool pass() const { return !verdicts || verdicts->pass(); }
};

/// Series text: bracketed generator lists separated by commas, e.g.
/// "[(1 2)(3 4),(1 3)(2 4)],[(1 2 3),(1 2)(3 4)]". The trivial subgroup and
/// G are added at the ends when missing; the result is validated.
inline ChiefSeries parse_series(const SubgroupLattice &L, std::string_view text) {
  const Group &G = L.group();
  std::vector<NodeId> terms;
  for (const auto &part : detail::split_top_level(text)) {
    if (part.size() < 2 || part.front() != '[' || part.back() != ']')
      throw ParseError("series term \"" + part + "\" must be a bracketed generator list");
    std::vector<ElementId> seed;
    for (const auto &p : parse_generators(std::string_view(part).substr(1, part.size() - 2),
                                          G.degree())) {
      auto id = G.index_of(p);
      if (!id)
        throw InvalidArgument("series generator " + p.to_cycles() + " is not in the group");
      seed.push_back(*id);
    }
    terms.push_back(L.id_of(subgroup_closure(G, std::span<const ElementId>(seed)).members));
  }
  if (terms.empty() || terms.front() != L.bottom())
    terms.insert(terms.begin(), L.bottom());
  if (terms.back() != L.top())
    terms.push_back(L.top());
  return validate_chief_series(L, std::move(terms));
}

namespace detail {

inline std::vector<Chain> sorted_ascending(const std::vector<Chain> &chains, Orientation o) {
  std::vector<Chain> out;
  for (const auto &c : chains)
    out.push_back(ascending(c, o));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// generate -> enumerate -> chief series -> label (and dual label) ->
/// verify. Throws NotSolvable, CapExceeded, ParseError or InvalidArgument.
inline Analysis analyze(const GroupSpec &spec, const AnalyzeOptions &options = {}) {
  Analysis a;
  a.spec = spec;
  auto group = std::make_shared<const Group>(build_group(spec, options.max_order));
  if (!is_solvable(*group))
    throw NotSolvable();
  auto lattice = std::make_shared<const SubgroupLattice>(
      enumerate_subgroups(group, options.max_subgroups));
  a.lattice = lattice;
  const auto &L = *lattice;
  a.series = options.series ? parse_series(L, *options.series) : chief_series(L);

  a.primal = std::make_shared<const LabeledLattice>(label_lattice(L, a.series));
  if (options.dual)
    a.dual = std::make_shared<const LabeledLattice>(label_lattice_dual(L, a.series));

  a.mu = moebius(L)[L.top()];
  a.complements = chains_of_complements(L, a.series);
  a.descending = detail::sorted_ascending(descending_chains(*a.primal), Orientation::primal);
  if (a.dual)
    a.dual_descending = detail::sorted_ascending(descending_chains(*a.dual), Orientation::dual);

  if (options.verify) {
    Verdicts v;
    auto intervals = checked_intervals(a.primal->view());
    v.el = check_el(*a.primal, intervals, options.threads);
    v.descent = check_descending_equals_complements(*a.primal);
    v.moebius_identity = check_moebius_identity(L, *a.primal, a.series);
    v.projections = check_projection_isomorphisms(*a.primal, intervals);
    v.coarse_skeleton = check_coarse_skeleton(*a.primal, intervals);
    v.left_modular = check_left_modular_equivalence(L);
    if (a.dual) {
      auto dual_intervals = checked_intervals(a.dual->view());
      v.el_dual = check_el(*a.dual, dual_intervals, options.threads);
      v.descent_dual = check_descending_equals_complements(*a.dual);
      v.projections_dual = check_projection_isomorphisms(*a.dual, dual_intervals);
    }
    a.verdicts = std::move(v);
  }
  return a;
}

namespace detail {

inline nlohmann::json label_json(EdgeLabel l) { return nlohmann::json::array({l.coarse, l.fine}); }

inline nlohmann::json check_json(const CheckResult &c) {
  return {{"pass", c.pass}, {"checked", c.checked}, {"failures", c.failures}};
}

inline nlohmann::json el_json(const ELReport &r) {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto &rec : r.records)
    if (!rec.pass && failed.size() < 20)
      failed.push_back(nlohmann::json::array({rec.lo, rec.hi}));
  return {{"pass", r.pass}, {"intervals", r.records.size()}, {"failed_intervals", failed}};
}

inline nlohmann::json descent_json(const DescentVerdict &d) {
  return {{"pass", d.pass},
          {"descending", d.descending.size()},
          {"complements", d.complements.size()},
          {"complement_labels", d.complement_labels_ok}};
}

} // namespace detail

/// The export bundle. Keys are sorted and every value is an integer,
/// boolean or string, so serialization is canonical. Timings are left out.
inline nlohmann::json to_json(const Analysis &a) {
  using nlohmann::json;
  const auto &L = *a.lattice;
  const Group &G = L.group();

  json elements = json::array();
  for (const auto &p : G.elements())
    elements.push_back(p.to_cycles());
  json group = {{"name", a.spec.name},
                {"order", G.order()},
                {"degree", G.degree()},
                {"generators", a.spec.generators},
                {"elements", elements}};

  json subgroups = json::array();
  for (NodeId id = 0; id < L.size(); ++id)
    subgroups.push_back({{"id", id}, {"order", L.node(id).order}, {"elements", L.node(id).elements()}});

  std::map<std::pair<NodeId, NodeId>, json> edges;
  for (const auto &e : a.primal->edges())
    edges[{e.from, e.to}] = {{"lower", e.from}, {"upper", e.to}, {"label", detail::label_json(e.label)}};
  if (a.dual)
    for (const auto &e : a.dual->edges())
      edges[{e.to, e.from}]["dual_label"] = detail::label_json(e.label);
  json edge_list = json::array();
  for (auto &[_, e] : edges)
    edge_list.push_back(std::move(e));

  json bundle = {{"schema", bundle_schema_version},
                 {"group", group},
                 {"subgroups", subgroups},
                 {"chief_series", a.series.terms},
                 {"edges", edge_list},
                 {"moebius", a.mu},
                 {"complement_chains", a.complements},
                 {"descending_chains", a.descending}};
  if (a.dual)
    bundle["dual_descending_chains"] = a.dual_descending;

  if (a.verdicts) {
    const auto &v = *a.verdicts;
    json verdicts = {{"pass", v.pass()},
                     {"el", detail::el_json(v.el)},
                     {"descending_equals_complements", detail::descent_json(v.descent)},
                     {"moebius_identity",
                      {{"pass", v.moebius_identity.pass},
                       {"mu", v.moebius_identity.mu},
                       {"k", v.moebius_identity.k},
                       {"complements", v.moebius_identity.complements},
                       {"signed_descending", v.moebius_identity.signed_descending}}},
                     {"projection_isomorphisms", detail::check_json(v.projections)},
                     {"coarse_skeleton", detail::check_json(v.coarse_skeleton)},
                     {"left_modular_equivalence", detail::check_json(v.left_modular)}};
    if (v.el_dual)
      verdicts["el_dual"] = detail::el_json(*v.el_dual);
    if (v.descent_dual)
      verdicts["dual_descending_equals_complements"] = detail::descent_json(*v.descent_dual);
    if (v.projections_dual)
      verdicts["dual_projection_isomorphisms"] = detail::check_json(*v.projections_dual);
    bundle["verdicts"] = verdicts;
  }
  return bundle;
}

inline std::string bundle_text(const Analysis &a) { return to_json(a).dump(2) + "\n"; }

/// Hasse diagram of the primal labeling. Nodes are "order:index", ranked by
/// subgroup order; edges carry "(i,j)".
inline std::string to_dot(const Analysis &a) {
  const auto &L = *a.lattice;
  std::ostringstream out;
  out << "digraph subgroup_lattice {\n  rankdir=BT;\n";
  for (NodeId id = 0; id < L.size(); ++id)
    out << "  n" << id << " [label=\"" << L.node(id).order << ":" << id << "\"];\n";
  std::map<std::size_t, std::vector<NodeId>> ranks;
  for (NodeId id = 0; id < L.size(); ++id)
    ranks[L.node(id).order].push_back(id);
  for (const auto &[order, ids] : ranks) {
    out << "  { rank=same;";
    for (auto id : ids)
      out << " n" << id << ";";
    out << " }\n";
  }
  for (const auto &e : a.primal->edges())
    out << "  n" << e.from << " -> n" << e.to << " [label=\"(" << e.label.coarse << ","
        << e.label.fine << ")\"];\n";
  out << "}\n";
  return out.str();
}

/// Exit codes shared by the CLI.
enum ExitCode : int {
  exit_pass = 0,
  exit_check_failed = 1,
  exit_not_solvable = 2,
  exit_cap_exceeded = 3,
  exit_parse_error = 4,
};

struct BatchRow {
  std::string group;
  std::string status;  // PASS, FAIL, NOT_SOLVABLE, CAP_EXCEEDED, PARSE_ERROR
  std::optional<Analysis> analysis;
  double milliseconds = 0;

  bool pass() const { return status == "PASS"; }
};

inline BatchRow run_batch_line(const std::string &line, AnalyzeOptions options) {
  BatchRow row;
  row.group = line;
  options.dual = true;
  options.verify = true;
  auto start = std::chrono::steady_clock::now();
  try {
    row.analysis = analyze(parse_group_spec(line), options);
    row.status = row.analysis->pass() ? "PASS" : "FAIL";
  } catch (const NotSolvable &) {
    row.status = "NOT_SOLVABLE";
  } catch (const CapExceeded &) {
    row.status = "CAP_EXCEEDED";
  } catch (const Error &) {
    row.status = "PARSE_ERROR";
  }
  row.milliseconds =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

/// Non-empty lines with `#` comments removed.
inline std::vector<std::string> batch_lines(std::istream &in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (!line.empty())
      out.push_back(line);
  }
  return out;
}

inline std::string batch_header() {
  return "group\torder\tsubgroups\tk\tmu\tdescending\tcomplements\tel\tel_dual\tms\tstatus\n";
}

inline std::string batch_row_text(const BatchRow &row) {
  std::ostringstream out;
  out << row.group;
  if (row.analysis) {
    const auto &a = *row.analysis;
    const auto &v = *a.verdicts;
    out << '\t' << a.lattice->group().order() << '\t' << a.lattice->size() << '\t'
        << a.series.length() << '\t' << a.mu << '\t' << a.descending.size() << '\t'
        << a.complements.size() << '\t' << (v.el.pass ? "pass" : "FAIL") << '\t'
        << (v.el_dual && v.el_dual->pass ? "pass" : "FAIL");
  } else {
    out << "\t-\t-\t-\t-\t-\t-\t-\t-";
  }
  out << '\t' << static_cast<long long>(row.milliseconds) << '\t' << row.status << '\n';
  return out.str();
}

} // namespace sgel
