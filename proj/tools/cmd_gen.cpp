#include <iostream>

#include "bodyshape/dataset.hpp"
#include "bodyshape/rng.hpp"
#include "bodyshape/transforms.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

struct GenOptions {
  std::size_t per_class = 10;
  std::vector<std::size_t> counts;
  std::size_t augment_to = 0;
  std::size_t width = kDefaultCanvasWidth;
  std::size_t height = kDefaultCanvasHeight;
  double noise = kDefaultNoiseSigma;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string index_name(ShapeLabel label, const char* tag, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04zu", i);
  return lower(to_string(label)) + tag + buf + ".pgm";
}

void run(const GenOptions& gen, const GlobalOptions& opts) {
  std::vector<std::size_t> counts = gen.counts;
  if (counts.empty()) counts.assign(kShapeLabelCount, gen.per_class);
  if (counts.size() != kShapeLabelCount) {
    throw std::runtime_error("--counts needs exactly five values");
  }

  std::filesystem::create_directories(opts.out);
  std::vector<ManifestEntry> manifest;

  for (ShapeLabel label : all_shape_labels()) {
    const std::size_t n = counts[static_cast<std::size_t>(ordinal(label))];
    std::vector<Mask> originals;
    originals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      SilhouetteParams params = sample_params(label, corpus_item_seed(opts.seed, label, i),
                                              gen.width, gen.height, gen.noise);
      const Mask mask = render_silhouette(params);
      const auto path = opts.out / index_name(label, "_", i);
      save_mask(mask, path);
      manifest.push_back({path, label});
      if (gen.augment_to > 0) originals.push_back(mask);
    }

    if (gen.augment_to > 0) {
      const auto plan = augment_plan({{label, n}}, gen.augment_to);
      const std::size_t needed = plan.front().second;
      for (std::size_t j = 0; j < needed; ++j) {
        const Mask& source = originals[j % originals.size()];
        const std::uint64_t aug_seed =
            derive_seed(opts.seed, 0xa060ULL + static_cast<std::uint64_t>(ordinal(label)), j);
        const Mask augmented = augment_mask(source, aug_seed);
        const auto path = opts.out / index_name(label, "_aug_", j);
        save_mask(augmented, path);
        manifest.push_back({path, label});
      }
    }
  }

  save_manifest(manifest, opts.out / "manifest.csv");
  if (!opts.quiet) {
    std::cout << "wrote " << manifest.size() << " masks and manifest.csv to "
              << opts.out.string() << "\n";
  }
}

}  // namespace

void register_cmd_gen(CLI::App& app, const GlobalOptions& opts) {
  auto gen = std::make_shared<GenOptions>();
  CLI::App* cmd = app.add_subcommand(
      "gen", "Generate a synthetic silhouette corpus (PGM masks plus manifest.csv)");
  cmd->add_option("--per-class", gen->per_class, "Silhouettes per class")->check(CLI::PositiveNumber);
  cmd->add_option("--counts", gen->counts,
                  "Explicit per-class counts in canonical label order (five values)")
      ->delimiter(',');
  cmd->add_option("--augment-to", gen->augment_to,
                  "Top every class up to this size with seeded rotation/flip augmentation");
  cmd->add_option("--width", gen->width, "Canvas width in pixels");
  cmd->add_option("--height", gen->height, "Canvas height in pixels");
  cmd->add_option("--noise", gen->noise, "Edge jitter sigma in pixels")
      ->check(CLI::NonNegativeNumber);
  cmd->callback([gen, &opts]() { run(*gen, opts); });
}

}  // namespace bodyshape::cli
