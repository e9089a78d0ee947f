#include "bodyshape/checkpoint.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bodyshape/fsio.hpp"

namespace bodyshape {
namespace neural {

namespace {

using nlohmann::json;

json serialize_layer(const Layer& layer);

json serialize_stack(const std::vector<const Layer*>& layers) {
  json arr = json::array();
  for (const Layer* l : layers) arr.push_back(serialize_layer(*l));
  return arr;
}

json serialize_layer(const Layer& layer) {
  json doc;
  doc["kind"] = layer.kind();
  doc["params"] = layer.shape_params();
  doc["frozen"] = layer.frozen();
  doc["weights"] = std::vector<double>(layer.weights().begin(), layer.weights().end());
  doc["biases"] = std::vector<double>(layer.biases().begin(), layer.biases().end());

  if (layer.kind() == "residual") {
    doc["inner"] = serialize_stack(layer.children());
  } else if (layer.kind() == "inception") {
    const auto& block = dynamic_cast<const InceptionBlock&>(layer);
    json branches = json::array();
    for (std::size_t b = 0; b < block.branch_count(); ++b) {
      std::vector<const Layer*> branch;
      for (const auto& l : block.branch(b)) branch.push_back(l.get());
      branches.push_back(serialize_stack(branch));
    }
    doc["branches"] = branches;
  }
  return doc;
}

[[noreturn]] void fail(const std::string& why) {
  throw std::runtime_error("checkpoint: " + why);
}

std::vector<std::size_t> read_params(const json& doc, std::size_t expect) {
  if (!doc.contains("params") || !doc["params"].is_array() || doc["params"].size() != expect) {
    fail("shape/data mismatch in layer params");
  }
  std::vector<std::size_t> out;
  for (const auto& v : doc["params"]) out.push_back(v.get<std::size_t>());
  return out;
}

std::vector<double> read_doubles(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) fail(std::string("missing array ") + key);
  std::vector<double> out;
  out.reserve(doc[key].size());
  for (const auto& v : doc[key]) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail("non-finite weight");
    out.push_back(x);
  }
  return out;
}

std::unique_ptr<Layer> deserialize_layer(const json& doc);

std::vector<std::unique_ptr<Layer>> deserialize_stack(const json& arr) {
  if (!arr.is_array() || arr.empty()) fail("empty layer stack");
  std::vector<std::unique_ptr<Layer>> out;
  for (const auto& item : arr) out.push_back(deserialize_layer(item));
  return out;
}

std::unique_ptr<Layer> deserialize_layer(const json& doc) {
  if (!doc.contains("kind")) fail("layer without kind");
  const std::string kind = doc["kind"].get<std::string>();

  std::unique_ptr<Layer> layer;
  if (kind == "dense") {
    const auto p = read_params(doc, 2);
    layer = std::make_unique<DenseLayer>(p[0], p[1]);
  } else if (kind == "conv2d") {
    const auto p = read_params(doc, 5);
    layer = std::make_unique<Conv2dLayer>(p[0], p[1], p[2], p[3], p[4]);
  } else if (kind == "maxpool2d") {
    const auto p = read_params(doc, 2);
    layer = std::make_unique<MaxPool2dLayer>(p[0], p[1]);
  } else if (kind == "relu") {
    layer = std::make_unique<ReluLayer>();
  } else if (kind == "flatten") {
    layer = std::make_unique<FlattenLayer>();
  } else if (kind == "residual") {
    if (!doc.contains("inner")) fail("residual layer without inner stack");
    layer = std::make_unique<ResidualBlock>(deserialize_stack(doc["inner"]));
  } else if (kind == "inception") {
    if (!doc.contains("branches") || !doc["branches"].is_array()) {
      fail("inception layer without branches");
    }
    std::vector<std::vector<std::unique_ptr<Layer>>> branches;
    for (const auto& b : doc["branches"]) branches.push_back(deserialize_stack(b));
    layer = std::make_unique<InceptionBlock>(std::move(branches));
  } else {
    fail("unknown layer kind '" + kind + "'");
  }

  const auto weights = read_doubles(doc, "weights");
  const auto biases = read_doubles(doc, "biases");
  if (weights.size() != layer->weights().size() || biases.size() != layer->biases().size()) {
    fail("shape/data mismatch between params and weight arrays");
  }
  std::copy(weights.begin(), weights.end(), layer->weights().begin());
  std::copy(biases.begin(), biases.end(), layer->biases().begin());

  // Own flag only: nested layers already carry their saved flags.
  layer->set_frozen(doc.value("frozen", false));
  return layer;
}

}  // namespace

void save_checkpoint(const Network& net, const std::filesystem::path& path) {
  json doc;
  doc["format_version"] = 1;
  doc["arch"] = net.arch();
  doc["input_shape"] = net.input_shape();
  json layers = json::array();
  for (const auto& l : net.layers()) layers.push_back(serialize_layer(*l));
  doc["layers"] = layers;
  atomic_write_file(path, doc.dump(2) + "\n");
}

Network load_checkpoint(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1) {
    fail("version mismatch");
  }
  if (!doc.contains("arch") || !doc.contains("input_shape") || !doc.contains("layers")) {
    fail("missing required fields");
  }
  std::vector<std::size_t> input_shape;
  for (const auto& v : doc["input_shape"]) input_shape.push_back(v.get<std::size_t>());
  try {
    return Network(doc["arch"].get<std::string>(), std::move(input_shape),
                   deserialize_stack(doc["layers"]));
  } catch (const std::invalid_argument& e) {
    fail(std::string("shape/data mismatch: ") + e.what());
  }
}

}  // namespace neural
}  // namespace bodyshape
