/*
 * Copyright (C) 2026 The agvtt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <agvtt/bench.hpp>
#include <agvtt/scenario.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace agvtt;

namespace {

struct Options
{
  std::string scenario_file;
  GenerateParams gen;
  std::string preset = "full-manhattan";
  std::string anchoriser = "greedy";
  std::string out_dir;

  std::string suite;
  std::vector<int> sizes{8, 12, 16, 20, 30};
  std::vector<std::size_t> agv_counts{5, 10, 20, 50};
  std::vector<std::uint32_t> levels{1, 2, 4, 6};
  std::size_t repeats = 5;
};

void add_generation_flags(CLI::App* app, Options& o)
{
  app->add_option("--grid", o.gen.grid, "Grid size n")
    ->check(CLI::Range(4, 100000));
  app->add_option("--weight", o.gen.weight, "Edge weight in ticks")
    ->check(CLI::PositiveNumber);
  app->add_option("--agvs", o.gen.agvs, "Number of AGVs");
  app->add_option("--demands", o.gen.demands, "Number of demands");
  app->add_option("--seed", o.gen.seed, "Random seed");
  app->add_option("--preset", o.preset, "Search preset")
    ->check(CLI::IsMember({"full-zero", "full-manhattan", "partial-dijkstras",
        "partial-manhattan"}));
  app->add_option("--anchoriser", o.anchoriser, "Anchorisation algorithm")
    ->check(CLI::IsMember({"naive", "greedy"}));
  app->add_option("--subdivide", o.gen.subdivisions, "Edge subdivisions")
    ->check(CLI::PositiveNumber);
  app->add_option(
    "--link-radius", o.gen.link_radius, "Geographic link radius");
  app->add_option(
    "--stop-pickup", o.gen.stop_pickup, "Ticks stopped at pickup");
  app->add_option("--stop-dropoff", o.gen.stop_dropoff,
    "Ticks stopped at dropoff");
  app->add_option("--horizon-max", o.gen.horizon_max,
    "Largest random demand horizon");
  app->add_option("--out", o.out_dir, "Output directory");
}

void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::ostream& output(const Options& o, const std::string& name,
  std::ofstream& file)
{
  if (o.out_dir.empty())
    return std::cout;
  fs::create_directories(o.out_dir);
  file.open(fs::path(o.out_dir) / name);
  if (!file)
    throw std::runtime_error("cannot write " + name + " in " + o.out_dir);
  return file;
}

Scenario scenario_for(const Options& o, const CLI::App* app)
{
  if (o.scenario_file.empty())
  {
    GenerateParams params = o.gen;
    params.preset = *parse_preset(o.preset);
    params.anchoriser = *parse_anchoriser(o.anchoriser);
    return generate_scenario(params);
  }

  std::ifstream in(o.scenario_file);
  if (!in)
    throw std::runtime_error("cannot read " + o.scenario_file);
  auto s = scenario_from_json(nlohmann::json::parse(in));
  if (app->count("--preset"))
    s.preset = *parse_preset(o.preset);
  if (app->count("--anchoriser"))
    s.anchoriser = *parse_anchoriser(o.anchoriser);
  if (app->count("--seed"))
    s.seed = o.gen.seed;
  return s;
}

int cmd_generate(const Options& o)
{
  GenerateParams params = o.gen;
  params.preset = *parse_preset(o.preset);
  params.anchoriser = *parse_anchoriser(o.anchoriser);
  const auto s = generate_scenario(params);

  std::ofstream file;
  output(o, "scenario.json", file) << to_json(s).dump(2) << "\n";
  return 0;
}

int cmd_run(const Options& o, const CLI::App* app)
{
  const auto s = scenario_for(o, app);
  const auto report = run_scenario(s);
  if (!report.ok())
  {
    const auto fault = fault_json(report).dump(2);
    std::cerr << fault << "\n";
    if (!o.out_dir.empty())
    {
      fs::create_directories(o.out_dir);
      write_file(fs::path(o.out_dir) / "fault.json", fault + "\n");
    }
    return 1;
  }

  const auto row = metrics_csv_row(
    "run", std::to_string(s.seed), to_string(s.preset), report.metrics);
  const auto timetable =
    timetable_json(*report.timetable, report.metrics).dump(2);

  if (o.out_dir.empty())
  {
    std::cout << timetable << "\n";
    std::cerr << metrics_csv_header() << "\n" << row << "\n";
    return 0;
  }

  fs::create_directories(o.out_dir);
  write_file(fs::path(o.out_dir) / "timetable.json", timetable + "\n");
  write_file(fs::path(o.out_dir) / "metrics.csv",
    metrics_csv_header() + "\n" + row + "\n");
  std::cout << row << "\n";
  return 0;
}

int cmd_bench(const Options& o, const CLI::App* app)
{
  std::vector<BenchRow> rows;
  if (o.suite == "anchorisers")
  {
    const int n = app->count("--grid") ? o.gen.grid : 20;
    rows = bench_anchorisers(
      n, o.gen.weight, o.agv_counts, o.gen.link_radius, o.gen.seed);
  }
  else if (o.suite == "presets")
  {
    const std::size_t agvs = app->count("--agvs") ? o.gen.agvs : 4;
    const std::size_t demands = app->count("--demands") ? o.gen.demands : 40;
    rows = bench_presets(o.sizes, o.gen.weight, agvs, demands, o.gen.seed);
  }
  else
  {
    const int n = app->count("--grid") ? o.gen.grid : 40;
    const Ticks weight = app->count("--weight") ? o.gen.weight : 6000;
    rows = bench_reservers(n, weight, o.levels, o.repeats);
  }

  std::ofstream file;
  auto& out = output(o, "bench_" + o.suite + ".csv", file);
  out << bench_csv_header() << "\n";
  bool clean = true;
  for (const auto& row : rows)
  {
    out << bench_csv_row(row) << "\n";
    clean = clean && (row.check == "ok" || row.check == "equal");
  }
  return clean ? 0 : 1;
}

} // anonymous namespace

int main(int argc, char** argv)
{
  CLI::App app{"Anchored AGV timetabling"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Write a random scenario");
  add_generation_flags(generate, o);

  auto* run = app.add_subcommand("run", "Timetable a scenario");
  run->add_option("--scenario", o.scenario_file, "Scenario JSON file")
    ->check(CLI::ExistingFile);
  add_generation_flags(run, o);

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("suite", o.suite, "anchorisers, presets or reservers")
    ->required()
    ->check(CLI::IsMember({"anchorisers", "presets", "reservers"}));
  add_generation_flags(bench, o);
  bench->add_option("--sizes", o.sizes, "Grid sizes for presets")
    ->delimiter(',');
  bench->add_option("--agv-counts", o.agv_counts, "Fleet sizes for anchorisers")
    ->delimiter(',');
  bench->add_option("--levels", o.levels, "Subdivision levels for reservers")
    ->delimiter(',');
  bench->add_option("--repeats", o.repeats, "Timing repeats for reservers");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (generate->parsed())
      return cmd_generate(o);
    if (run->parsed())
      return cmd_run(o, run);
    return cmd_bench(o, bench);
  }
  catch (const std::exception& e)
  {
    nlohmann::json fault = {
      {"status", "fault"}, {"stage", "input"}, {"detail", e.what()}};
    std::cerr << fault.dump(2) << "\n";
    return 1;
  }
}
