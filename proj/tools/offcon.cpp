// offcon: answer, verify, generate and benchmark offline connectivity timelines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "offcon/offcon.hpp"

namespace {

constexpr const char* kFormat = R"(Event file format, one event per line:
  I <u> <v>        insert edge uv
  D <u> <v>        delete edge uv (the oldest live copy, FIFO)
  Q2E|Q3E|QBC|QTC <u> <v>
                   2-edge, 3-edge, bi- or tri-connectivity query, u != v
Vertices are unsigned 64-bit integers; '#' starts a comment.
Exit codes: 0 ok, 1 mismatch, 2 parse error, 3 semantic error.)";

std::vector<offcon::QueryMode> parse_modes(const std::string& list) {
  std::vector<offcon::QueryMode> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto m = offcon::mode_from_short_name(item);
    if (!m) throw CLI::ValidationError("--modes", "unknown mode '" + item + "'");
    out.push_back(*m);
  }
  return out;
}

int with_file(const std::string& path, auto&& body) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return offcon::kParseFailure;
  }
  return body(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline dynamic 2-edge, 3-edge, bi- and tri-connectivity"};
  app.footer(kFormat);
  app.require_subcommand(1);

  std::string path;
  bool inject = false;

  auto* answer = app.add_subcommand("answer", "print YES/NO for each query in event order");
  answer->add_option("file", path, "event file")->required();

  auto* verify = app.add_subcommand("verify", "compare the offline engine against naive replay");
  verify->add_option("file", path, "event file")->required();
  verify->add_flag("--inject-fault", inject, "drop one edge from every reduced graph (negative control)");

  offcon::GenOptions gen_opt;
  std::string modes = "2E,3E,BC,TC";
  auto* gen = app.add_subcommand("gen", "write a random timeline to stdout");
  gen->add_option("--seed", gen_opt.seed, "random seed")->required();
  gen->add_option("--t", gen_opt.t, "number of events")->required();
  gen->add_option("--n", gen_opt.n, "number of vertices")->required()->check(CLI::Range(2ull, ~0ull));
  gen->add_option("--modes", modes, "comma-separated query modes");

  offcon::BenchOptions bench_opt;
  std::string bench_mode = "2E";
  std::vector<std::size_t> ts;
  bool skip_naive = false;
  auto* bench = app.add_subcommand("bench", "time both engines, CSV on stdout");
  bench->add_option("--mode", bench_mode, "query mode")->required();
  bench->add_option("--t", ts, "timeline lengths")->required()->delimiter(',');
  bench->add_option("--seed", bench_opt.seed, "random seed")->required();
  bench->add_option("--n", bench_opt.n, "number of vertices");
  bench->add_flag("--offline-only", skip_naive, "skip the naive engine");

  CLI11_PARSE(app, argc, argv);

  try {
    if (answer->parsed()) {
      return with_file(path, [](std::istream& in) { return offcon::cmd_answer(in, std::cout, std::cerr); });
    }
    if (verify->parsed()) {
      offcon::ReduceConfig config;
      config.inject_fault = inject;
      return with_file(path, [&](std::istream& in) { return offcon::cmd_verify(in, std::cout, std::cerr, config); });
    }
    if (gen->parsed()) {
      gen_opt.modes = parse_modes(modes);
      return offcon::cmd_gen(gen_opt, std::cout);
    }
    if (bench->parsed()) {
      auto m = offcon::mode_from_short_name(bench_mode);
      if (!m) {
        std::cerr << "unknown mode '" << bench_mode << "'\n";
        return offcon::kParseFailure;
      }
      bench_opt.mode = *m;
      bench_opt.ts = ts;
      bench_opt.naive = !skip_naive;
      return offcon::cmd_bench(bench_opt, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return offcon::kSemanticFailure;
  }
  return offcon::kOk;
}
