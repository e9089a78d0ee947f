#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bodyshape/fsio.hpp"
#include "bodyshape/rng.hpp"
#include "bodyshape/table.hpp"

using namespace bodyshape;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("BODYSHAPE_CLI");
  REQUIRE_MESSAGE(env != nullptr, "BODYSHAPE_CLI must point at the bodyshape binary");
  return env;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bodyshape_it" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string run_cli_capture(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "bodyshape_it" / "capture.txt";
  const std::string cmd = cli_path() + " " + args + " >" + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  INFO("exit status ", status);
  return read_file(out);
}

std::size_t line_count(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("gen writes one PGM per sample plus a manifest") {
  const fs::path dir = fresh_dir("gen_small");
  REQUIRE(run_cli("--seed 3 --out " + dir.string() + " gen --per-class 2 --quiet") == 0);

  std::size_t pgms = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".pgm") ++pgms;
  }
  CHECK(pgms == 10);
  CHECK(line_count(dir / "manifest.csv") == 11);  // header + 10 rows
}

TEST_CASE("gen honors explicit counts and augments every class to the target") {
  const fs::path dir = fresh_dir("gen_aug");
  REQUIRE(run_cli("--seed 3 --out " + dir.string() +
                  " gen --counts 2,3,1,2,2 --augment-to 4 --width 64 --height 128 --quiet") == 0);
  CHECK(line_count(dir / "manifest.csv") == 1 + 4 * 5);

  const auto entries = load_manifest(dir / "manifest.csv");
  std::size_t per_class[5] = {0, 0, 0, 0, 0};
  for (const auto& e : entries) {
    per_class[ordinal(e.label)]++;
    CHECK(fs::exists(e.path));
  }
  for (std::size_t c = 0; c < 5; ++c) CHECK(per_class[c] == 4);
}

TEST_CASE("gen is byte-deterministic in the seed") {
  const fs::path a = fresh_dir("gen_det_a");
  const fs::path b = fresh_dir("gen_det_b");
  REQUIRE(run_cli("--seed 11 --out " + a.string() + " gen --per-class 2 --quiet") == 0);
  REQUIRE(run_cli("--seed 11 --out " + b.string() + " gen --per-class 2 --quiet") == 0);

  for (const auto& e : fs::directory_iterator(a)) {
    CAPTURE(e.path().filename().string());
    CHECK(read_file(e.path()) == read_file(b / e.path().filename()));
  }

  const fs::path c = fresh_dir("gen_det_c");
  REQUIRE(run_cli("--seed 12 --out " + c.string() + " gen --per-class 2 --quiet") == 0);
  CHECK(read_file(a / "apple_0000.pgm") != read_file(c / "apple_0000.pgm"));
}

TEST_CASE("measure emits the canonical measurement CSV") {
  const fs::path gen = fresh_dir("measure_gen");
  REQUIRE(run_cli("--seed 5 --out " + gen.string() + " gen --per-class 3 --quiet") == 0);
  const fs::path out = fresh_dir("measure_out");
  REQUIRE(run_cli("--out " + out.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);

  const DatasetTable t = load_measurement_csv(out / "measurements.csv");
  CHECK(t.rows() == 15);
  CHECK(t.has_labels());
  CHECK_FALSE(fs::exists(out / "errors.csv"));
}

TEST_CASE("measure records per-file failures and fails only when all fail") {
  const fs::path dir = fresh_dir("measure_err");
  std::ofstream(dir / "manifest.csv") << "path,label\nmissing.pgm,Apple\n";
  CHECK(run_cli("--out " + dir.string() + " --quiet measure " +
                (dir / "manifest.csv").string()) == 1);
  CHECK(fs::exists(dir / "errors.csv"));
}

TEST_CASE("end-to-end drop pipeline produces predictions and a report") {
  const fs::path gen = fresh_dir("drop_gen");
  REQUIRE(run_cli("--seed 42 --out " + gen.string() + " gen --per-class 20 --quiet") == 0);
  const fs::path meas = fresh_dir("drop_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);

  const fs::path cls = fresh_dir("drop_cls");
  const std::string csv = (meas / "measurements.csv").string();
  const std::string output = run_cli_capture("--seed 42 --out " + cls.string() + " classify " +
                                             csv + " --method drop --fit-from " + csv +
                                             " --model " + (cls / "drop.json").string());
  CHECK(output.find("accuracy:") != std::string::npos);
  CHECK(fs::exists(cls / "predictions.csv"));
  CHECK(fs::exists(cls / "report.json"));
  CHECK(fs::exists(cls / "report.txt"));
  CHECK(fs::exists(cls / "drop.json"));
  CHECK(line_count(cls / "predictions.csv") == 101);

  SUBCASE("the saved model reproduces the predictions") {
    const fs::path cls2 = fresh_dir("drop_cls2");
    REQUIRE(run_cli("--out " + cls2.string() + " --quiet classify " + csv +
                    " --method drop --model " + (cls / "drop.json").string()) == 0);
    CHECK(read_file(cls2 / "predictions.csv") == read_file(cls / "predictions.csv"));
  }
}

TEST_CASE("unlabeled input classifies without a report and exits 0") {
  const fs::path dir = fresh_dir("unlabeled");
  std::ofstream(dir / "m.csv") << "bust,waist,hip,shoulder,stature\n66,46,68,64,236\n";
  std::ofstream(dir / "fit.csv") << "bust,waist,hip,shoulder,stature,label\n"
                                 << "66,46,68,64,236,Hourglass\n64,63,66,62,230,Rectangle\n"
                                 << "60,67,62,58,228,Apple\n58,50,82,56,233,Triangle\n"
                                 << "70,52,60,71,231,InvertedTriangle\n";
  CHECK(run_cli("--out " + dir.string() + " --quiet classify " + (dir / "m.csv").string() +
                " --method drop --fit-from " + (dir / "fit.csv").string()) == 0);
  CHECK(fs::exists(dir / "predictions.csv"));
  CHECK_FALSE(fs::exists(dir / "report.json"));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("definitely-not-a-subcommand") == 2);
  CHECK(run_cli("classify x.csv --method nope") == 2);
  CHECK(run_cli("classify") == 2);  // missing required input
}

TEST_CASE("runtime errors exit with code 1") {
  CHECK(run_cli("--quiet measure /nonexistent/manifest.csv") == 1);
  const fs::path dir = fresh_dir("runtime_err");
  std::ofstream(dir / "m.csv") << "bust,waist,hip,shoulder,stature\n1,2,3,4,5\n";
  // drop without a model or fitting data is a data error, not usage.
  CHECK(run_cli("--out " + dir.string() + " --quiet classify " + (dir / "m.csv").string() +
                " --method drop") == 1);
}

TEST_CASE("fuzzy cluster memberships sum to one") {
  const fs::path gen = fresh_dir("fcm_gen");
  REQUIRE(run_cli("--seed 9 --out " + gen.string() + " gen --per-class 10 --quiet") == 0);
  const fs::path meas = fresh_dir("fcm_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);
  const fs::path clu = fresh_dir("fcm_out");
  REQUIRE(run_cli("--seed 9 --out " + clu.string() + " --quiet cluster " +
                  (meas / "measurements.csv").string() + " --features ratio --fuzzy --clusters 5") ==
          0);

  std::istringstream in(read_file(clu / "assignments.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(split_csv_line(line).size() == 2 + 5);
  while (std::getline(in, line)) {
    const auto fields = split_csv_line(line);
    double sum = 0.0;
    for (std::size_t j = 2; j < fields.size(); ++j) sum += std::stod(fields[j]);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(fs::exists(clu / "model.json"));
}

TEST_CASE("select-k on the corpus reports both criteria") {
  const fs::path gen = fresh_dir("selk_gen");
  REQUIRE(run_cli("--seed 13 --out " + gen.string() + " gen --per-class 25 --quiet") == 0);
  const fs::path meas = fresh_dir("selk_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);
  const fs::path clu = fresh_dir("selk_out");
  const std::string output =
      run_cli_capture("--seed 13 --out " + clu.string() + " cluster " +
                      (meas / "measurements.csv").string() + " --features ratio --select-k 2..5");
  CHECK(output.find("select-k: bic=") != std::string::npos);
  CHECK(output.find("silhouette=") != std::string::npos);
}

TEST_CASE("training is deterministic and freezing everything trains nothing") {
  const fs::path data = fresh_dir("train_data");
  {
    std::ofstream csv(data / "train.csv");
    csv << "bust,waist,hip,shoulder,stature,label\n";
    SplitMix64 rng(77);
    for (int i = 0; i < 30; ++i) {
      const double b = 60 + rng.uniform(-2, 2);
      csv << b << ',' << 0.70 * b << ',' << 1.03 * b << ',' << b << ",230,Hourglass\n";
      csv << b << ',' << 0.99 * b << ',' << 1.03 * b << ',' << b << ",230,Rectangle\n";
      csv << b << ',' << 1.12 * b << ',' << 1.03 * b << ',' << b << ",230,Apple\n";
      csv << b << ',' << 0.85 * b << ',' << 1.45 * b << ',' << b << ",230,Triangle\n";
      csv << 1.15 * b << ',' << 0.85 * b << ',' << b << ',' << 1.18 * b
          << ",230,InvertedTriangle\n";
    }
  }
  const std::string csv = (data / "train.csv").string();

  const fs::path a = fresh_dir("train_a");
  const fs::path b = fresh_dir("train_b");
  const std::string flags = " train " + csv + " --arch mlp13 --epochs 5";
  REQUIRE(run_cli("--seed 7 --out " + a.string() + " --quiet" + flags) == 0);
  REQUIRE(run_cli("--seed 7 --out " + b.string() + " --quiet" + flags) == 0);
  CHECK(read_file(a / "checkpoint.json") == read_file(b / "checkpoint.json"));
  CHECK(read_file(a / "curve.csv") == read_file(b / "curve.csv"));
  CHECK(read_file(a / "val_report.json") == read_file(b / "val_report.json"));

  SUBCASE("freeze all leaves the checkpoint at initialization") {
    const fs::path f1 = fresh_dir("train_f1");
    const fs::path f5 = fresh_dir("train_f5");
    REQUIRE(run_cli("--seed 7 --out " + f1.string() + " --quiet train " + csv +
                    " --arch mlp13 --epochs 1 --freeze all") == 0);
    REQUIRE(run_cli("--seed 7 --out " + f5.string() + " --quiet train " + csv +
                    " --arch mlp13 --epochs 5 --freeze all") == 0);
    CHECK(read_file(f1 / "checkpoint.json") == read_file(f5 / "checkpoint.json"));
  }
}

TEST_CASE("the unbalanced corpus augments to one thousand per class") {
  // Small canvas keeps the 5000-mask corpus cheap; the counting contract
  // is what matters here.
  const fs::path dir = fresh_dir("gen_thousand");
  REQUIRE(run_cli("--seed 2 --out " + dir.string() +
                  " gen --counts 50,315,166,315,95 --augment-to 1000 --width 32 --height 64 "
                  "--quiet") == 0);
  CHECK(line_count(dir / "manifest.csv") == 1 + 5000);

  const auto entries = load_manifest(dir / "manifest.csv");
  std::size_t per_class[5] = {0, 0, 0, 0, 0};
  for (const auto& e : entries) per_class[ordinal(e.label)]++;
  for (std::size_t c = 0; c < 5; ++c) CHECK(per_class[c] == 1000);
}

TEST_CASE("cluster --pca embeds the projection in the model file") {
  const fs::path gen = fresh_dir("pca_gen");
  REQUIRE(run_cli("--seed 21 --out " + gen.string() + " gen --per-class 20 --quiet") == 0);
  const fs::path meas = fresh_dir("pca_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);
  const fs::path clu = fresh_dir("pca_out");
  const std::string output = run_cli_capture(
      "--seed 21 --out " + clu.string() + " cluster " + (meas / "measurements.csv").string() +
      " --features ratio --pca 0.85 --k 5");
  CHECK(output.find("pca kept") != std::string::npos);
  const std::string model = read_file(clu / "model.json");
  CHECK(model.find("\"pca\"") != std::string::npos);
  CHECK(model.find("\"components\"") != std::string::npos);
}

TEST_CASE("eval of identical labelings reports kappa 1") {
  const fs::path dir = fresh_dir("eval_same");
  std::ofstream(dir / "p.csv") << "id,predicted\n0,Apple\n1,Triangle\n2,Hourglass\n";
  const std::string output = run_cli_capture("--out " + dir.string() + " eval --truth " +
                                             (dir / "p.csv").string() + " --pred " +
                                             (dir / "p.csv").string());
  CHECK(output.find("cohen_kappa: 1") != std::string::npos);
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("every measurement-based method classifies through the same surface") {
  const fs::path gen = fresh_dir("methods_gen");
  REQUIRE(run_cli("--seed 31 --out " + gen.string() + " gen --per-class 30 --quiet") == 0);
  const fs::path meas = fresh_dir("methods_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);
  const std::string csv = (meas / "measurements.csv").string();

  for (const std::string method : {"kmeans", "fcm", "lda-nm"}) {
    CAPTURE(method);
    const fs::path out = fresh_dir("methods_" + method);
    REQUIRE(run_cli("--seed 31 --out " + out.string() + " --quiet classify " + csv +
                    " --method " + method + " --fit-from " + csv + " --model " +
                    (out / "model.json").string()) == 0);
    CHECK(fs::exists(out / "predictions.csv"));
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "model.json"));
    CHECK(line_count(out / "predictions.csv") == 151);
  }
}

TEST_CASE("a trained mlp13 checkpoint classifies measurements") {
  const fs::path gen = fresh_dir("mlp_gen");
  REQUIRE(run_cli("--seed 33 --out " + gen.string() + " gen --per-class 30 --quiet") == 0);
  const fs::path meas = fresh_dir("mlp_meas");
  REQUIRE(run_cli("--out " + meas.string() + " --quiet measure " +
                  (gen / "manifest.csv").string()) == 0);
  const std::string csv = (meas / "measurements.csv").string();

  const fs::path run = fresh_dir("mlp_run");
  REQUIRE(run_cli("--seed 33 --out " + run.string() + " --quiet train " + csv +
                  " --arch mlp13 --epochs 30") == 0);
  const fs::path cls = fresh_dir("mlp_cls");
  const std::string output =
      run_cli_capture("--out " + cls.string() + " classify " + csv + " --method mlp13 --model " +
                      (run / "checkpoint.json").string());
  CHECK(output.find("accuracy:") != std::string::npos);
  CHECK(fs::exists(cls / "predictions.csv"));

  // A checkpoint of one architecture cannot serve another method.
  CHECK(run_cli("--out " + cls.string() + " --quiet classify " + csv +
                " --method rescnn --model " + (run / "checkpoint.json").string()) == 1);
}

TEST_CASE("stamped reports embed a timestamp field") {
  const fs::path dir = fresh_dir("stamp");
  std::ofstream(dir / "p.csv") << "id,predicted\n0,Apple\n1,Triangle\n";
  REQUIRE(run_cli("--out " + dir.string() + " --stamp --quiet eval --truth " +
                  (dir / "p.csv").string() + " --pred " + (dir / "p.csv").string()) == 0);
  CHECK(read_file(dir / "report.json").find("generated_at") != std::string::npos);
}

TEST_CASE("config file supplies defaults that flags override") {
  const fs::path dir = fresh_dir("config");
  std::ofstream(dir / "cfg.json") << "{\"seed\": 11, \"out\": \"" << (dir / "from_config").string()
                                  << "\", \"quiet\": true}\n";

  REQUIRE(run_cli("--config " + (dir / "cfg.json").string() + " gen --per-class 1") == 0);
  CHECK(fs::exists(dir / "from_config" / "manifest.csv"));

  // An explicit --out wins over the config value.
  REQUIRE(run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                  (dir / "flag_wins").string() + " gen --per-class 1") == 0);
  CHECK(fs::exists(dir / "flag_wins" / "manifest.csv"));

  // Same config seed equals same artifacts as --seed 11.
  const fs::path explicit_seed = fresh_dir("config_seed");
  REQUIRE(run_cli("--seed 11 --out " + explicit_seed.string() + " gen --per-class 1 --quiet") == 0);
  CHECK(read_file(dir / "from_config" / "apple_0000.pgm") ==
        read_file(explicit_seed / "apple_0000.pgm"));
}
