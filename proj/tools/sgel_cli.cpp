#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sgel/sgel.hpp"

namespace {

struct GroupFlags {
  std::string name;
  std::string gens;
  std::size_t degree = 0;
  std::string series;
  std::size_t threads = sgel::default_thread_count();
  std::size_t max_order = sgel::default_max_order;
  std::size_t max_subgroups = sgel::default_max_subgroups;
};

void add_group_flags(CLI::App &cmd, GroupFlags &f) {
  auto *group = cmd.add_option("--group", f.name, "catalog group, e.g. S4, D6, Q8, SL23");
  auto *gens = cmd.add_option("--gens", f.gens, "generators in cycle notation, comma separated");
  auto *degree = cmd.add_option("--degree", f.degree, "degree for --gens");
  group->excludes(gens);
  gens->needs(degree);
  cmd.add_option("--series", f.series,
                 "chief series as bracketed generator lists, e.g. \"[(1 2)(3 4),(1 3)(2 4)]\"");
  cmd.add_option("--threads", f.threads, "verification worker count");
  cmd.add_option("--max-order", f.max_order, "group order cap");
  cmd.add_option("--max-subgroups", f.max_subgroups, "subgroup count cap");
}

sgel::GroupSpec group_spec(const GroupFlags &f) {
  if (!f.name.empty())
    return sgel::resolve_catalog(f.name);
  if (f.degree == 0)
    throw sgel::ParseError("either --group or --gens with --degree is required");
  sgel::GroupSpec spec{"degree=" + std::to_string(f.degree) + "; gens=" + f.gens, f.degree, {}};
  for (const auto &p : sgel::parse_generators(f.gens, f.degree))
    spec.generators.push_back(p.to_cycles());
  return spec;
}

sgel::AnalyzeOptions options_from(const GroupFlags &f) {
  sgel::AnalyzeOptions o;
  o.threads = f.threads;
  o.max_order = f.max_order;
  o.max_subgroups = f.max_subgroups;
  if (!f.series.empty())
    o.series = f.series;
  return o;
}

void write_output(const std::string &text, const std::string &path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw sgel::InvalidArgument("cannot open " + path + " for writing");
  out << text;
}

template <typename Body> int guarded(Body &&body) {
  try {
    return body();
  } catch (const sgel::NotSolvable &e) {
    std::cerr << "error: " << e.what() << "\n";
    return sgel::exit_not_solvable;
  } catch (const sgel::CapExceeded &e) {
    std::cerr << "error: " << e.what() << "\n";
    return sgel::exit_cap_exceeded;
  } catch (const sgel::ConsistencyError &e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return sgel::exit_check_failed;
  } catch (const sgel::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return sgel::exit_parse_error;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"EL-labeling of subgroup lattices of finite solvable groups"};
  app.require_subcommand(1);

  GroupFlags analyze_flags;
  bool dual = false, no_verify = false;
  std::string out_path, format = "json";
  auto *analyze = app.add_subcommand("analyze", "label L(G) and verify the labeling");
  add_group_flags(*analyze, analyze_flags);
  analyze->add_flag("--dual", dual, "also build the dual labeling");
  analyze->add_flag("--no-verify", no_verify, "skip verification");
  analyze->add_option("--out", out_path, "output file (default stdout)");
  analyze->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  GroupFlags dot_flags;
  std::string dot_out;
  auto *export_dot = app.add_subcommand("export-dot", "Hasse diagram with labels as DOT");
  add_group_flags(*export_dot, dot_flags);
  export_dot->add_option("--out", dot_out, "output file (default stdout)");

  GroupFlags batch_flags;
  std::string batch_file, out_dir;
  auto *batch = app.add_subcommand("verify-batch", "verify every group listed in a file");
  batch->add_option("file", batch_file, "one group spec per line, # comments")->required();
  batch->add_option("--out-dir", out_dir, "write one JSON bundle per group here");
  batch->add_option("--threads", batch_flags.threads, "verification worker count");
  batch->add_option("--max-order", batch_flags.max_order, "group order cap");
  batch->add_option("--max-subgroups", batch_flags.max_subgroups, "subgroup count cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : sgel::exit_parse_error;
  }

  if (*analyze) {
    return guarded([&] {
      auto options = options_from(analyze_flags);
      options.dual = dual;
      options.verify = !no_verify;
      auto a = sgel::analyze(group_spec(analyze_flags), options);
      write_output(format == "dot" ? sgel::to_dot(a) : sgel::bundle_text(a), out_path);
      return a.pass() ? sgel::exit_pass : sgel::exit_check_failed;
    });
  }

  if (*export_dot) {
    return guarded([&] {
      auto options = options_from(dot_flags);
      options.verify = false;
      auto a = sgel::analyze(group_spec(dot_flags), options);
      write_output(sgel::to_dot(a), dot_out);
      return sgel::exit_pass;
    });
  }

  return guarded([&] {
    std::ifstream in(batch_file);
    if (!in)
      throw sgel::ParseError("cannot read " + batch_file);
    if (!out_dir.empty())
      std::filesystem::create_directories(out_dir);
    bool all_pass = true;
    std::cout << sgel::batch_header();
    std::size_t index = 0;
    for (const auto &line : sgel::batch_lines(in)) {
      auto row = sgel::run_batch_line(line, options_from(batch_flags));
      all_pass = all_pass && row.pass();
      std::cout << sgel::batch_row_text(row) << std::flush;
      if (!out_dir.empty() && row.analysis) {
        auto path = std::filesystem::path(out_dir) / (std::to_string(index) + ".json");
        write_output(sgel::bundle_text(*row.analysis), path.string());
      }
      ++index;
    }
    return all_pass ? sgel::exit_pass : sgel::exit_check_failed;
  });
}
