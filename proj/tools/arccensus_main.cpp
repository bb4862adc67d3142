#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arccensus/arc_io.hpp"
#include "arccensus/counter.hpp"
#include "arccensus/testkit.hpp"

using namespace arccensus;

namespace {

enum Exit { kOk = 0, kInputError = 1, kDegenerate = 2, kMismatch = 3 };

std::vector<UnitArc> load(const std::string& path) {
  if (path == "-") return read_arcs(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_arcs(in);
}

void print(const CountReport& r, const std::string& format) {
  std::cout << (format == "json" ? report_json(r) + "\n" : report_text(r));
}

std::pair<std::vector<UnitArc>, std::vector<UnitArc>> split_colors(const std::vector<UnitArc>& arcs) {
  std::vector<UnitArc> red, blue;
  for (const auto& a : arcs) {
    if (a.color == Color::red) red.push_back(a);
    else if (a.color == Color::blue) blue.push_back(a);
  }
  return {red, blue};
}

// Runs `body`, mapping library errors to exit codes.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: arcs " << e.first_id << " and " << e.second_id << ": " << e.reason << '\n';
    return kDegenerate;
  } catch (const GenerationFailure& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts intersection points among unit circular arcs"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "text";
  std::string bichromatic;
  bool small_k = false;
  int threads = 1;

  auto* count = app.add_subcommand("count", "count intersections with the subquadratic pipeline");
  count->add_option("input", input, "arc file, '-' for stdin");
  count->add_flag("--small-k", small_k, "output-sensitive variant");
  count->add_option("--bichromatic", bichromatic, "count red-blue points only")
      ->check(CLI::IsMember({"direct", "identity"}));
  count->add_option("--threads", threads)->check(CLI::PositiveNumber);
  count->add_option("--report", format)->check(CLI::IsMember({"json", "text"}));

  auto* oracle = app.add_subcommand("oracle", "count intersections by checking every pair");
  oracle->add_option("input", input);
  oracle->add_option("--report", format)->check(CLI::IsMember({"json", "text"}));

  long long inject = 0;
  auto* compare = app.add_subcommand("compare", "run pipeline and oracle, exit 3 if they differ");
  compare->add_option("input", input);
  compare->add_option("--threads", threads)->check(CLI::PositiveNumber);
  compare->add_option("--inject-offset", inject, "add this to the pipeline total (negative control)")
      ->group("");

  InstanceSpec spec;
  auto* gen = app.add_subcommand("gen", "write a random general-position instance");
  gen->add_option("--n", spec.n)->check(CLI::NonNegativeNumber);
  gen->add_option("--box", spec.box);
  gen->add_option("--span-min", spec.span_min);
  gen->add_option("--span-max", spec.span_max);
  gen->add_option("--red-frac", spec.red_fraction)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", spec.seed);
  gen->add_option("--margin", spec.margin);

  std::vector<int> sizes;
  int seeds = 1;
  std::string algo = "pipeline";
  double density = 0.5;
  auto* bench = app.add_subcommand("bench", "time runs on random instances; CSV on stdout");
  bench->add_option("--sizes", sizes)->delimiter(',')->required();
  bench->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
  bench->add_option("--algo", algo)->check(CLI::IsMember({"pipeline", "oracle", "smallk"}));
  bench->add_option("--density", density, "arcs per unit area");
  bench->add_option("--threads", threads)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  CounterConfig config;
  config.threads = threads;

  if (*count) {
    return guarded([&] {
      auto arcs = load(input);
      CountReport r;
      if (!bichromatic.empty()) {
        auto [red, blue] = split_colors(arcs);
        auto mode = bichromatic == "direct" ? BichromaticMode::direct : BichromaticMode::identity;
        r = count_bichromatic(red, blue, mode, config);
      } else {
        r = small_k ? count_small_k(arcs, config) : count_all(arcs, config);
      }
      print(r, format);
      return kOk;
    });
  }
  if (*oracle) {
    return guarded([&] {
      auto arcs = load(input);
      require_general_position(arcs, config.margin);
      CountReport r;
      auto t0 = std::chrono::steady_clock::now();
      r.total = brute_count(arcs);
      r.diagnostics.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print(r, format);
      return kOk;
    });
  }
  if (*compare) {
    return guarded([&] {
      auto arcs = load(input);
      auto fast = count_all(arcs, config).total + static_cast<std::uint64_t>(inject);
      auto slow = brute_count(arcs);
      long long diff = static_cast<long long>(fast) - static_cast<long long>(slow);
      std::cout << "pipeline " << fast << "\noracle " << slow << "\ndiff " << diff << '\n';
      return diff == 0 ? kOk : kMismatch;
    });
  }
  if (*gen) {
    return guarded([&] {
      write_arcs(std::cout, gen_instance(spec).arcs);
      return kOk;
    });
  }
  if (*bench) {
    return guarded([&] {
      for (int n : sizes) {
        if (n <= 0) throw std::invalid_argument("sizes must be positive");
      }
      std::cout << "algo,n,seed,K,seconds,cells,resamples" << std::endl;
      for (int n : sizes) {
        for (int s = 0; s < seeds; ++s) {
          InstanceSpec is;
          is.n = n;
          is.box = std::sqrt(n / density);
          is.seed = static_cast<std::uint64_t>(s);
          auto arcs = gen_instance(is).arcs;
          CountReport r;
          auto t0 = std::chrono::steady_clock::now();
          if (algo == "oracle") r.total = brute_count(arcs);
          else if (algo == "smallk") r = count_small_k(arcs, config);
          else r = count_all(arcs, config);
          double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          std::cout << algo << ',' << n << ',' << s << ',' << r.total << ',' << sec << ','
                    << r.diagnostics.main_cutting_cells + r.diagnostics.index_cells << ','
                    << r.diagnostics.resample_rounds << std::endl;
        }
      }
      return kOk;
    });
  }
  return kOk;
}
