// Writes the built-in benchmark tables as CSV + schema files so they can be
// fed back through `impute run --data/--schema`.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igrm/data/dataset.hpp"
#include "igrm/data/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Export the built-in benchmark tables"};
  std::string out_dir = ".";
  std::vector<std::string> names{"concrete", "housing", "yacht"};
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--name", names, "Datasets to export")
      ->delimiter(',')
      ->check(CLI::IsMember({"concrete", "housing", "yacht"}));
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    for (const auto& name : names) {
      const auto ds = igrm::data::make_benchmark(name);
      const auto csv = (std::filesystem::path(out_dir) / (name + ".csv"));
      const auto schema =
          (std::filesystem::path(out_dir) / (name + ".schema.json"));
      igrm::data::save_csv(ds, csv.string());
      igrm::data::save_schema(ds.columns, schema.string());
      std::printf("%s: %lld rows x %zu columns -> %s\n", name.c_str(),
                  static_cast<long long>(ds.n_rows), ds.columns.size(),
                  csv.string().c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
