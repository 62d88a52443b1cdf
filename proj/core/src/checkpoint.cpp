#include "unigad/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "unigad/graph_io.hpp"

namespace unigad {

using nlohmann::json;

namespace {

json levels_to_json(const std::set<Level>& levels) {
    json arr = json::array();
    for (Level l : levels) arr.push_back(level_name(l));
    return arr;
}

std::set<Level> levels_from_json(const json& arr) {
    std::set<Level> out;
    for (const auto& name : arr) out.insert(level_from_name(name.get<std::string>()));
    return out;
}

json config_to_json_obj(const TrainConfig& c) {
    json j;
    j["depth"] = c.depth;
    j["decay"] = c.decay;
    j["hidden_dim"] = c.hidden_dim;
    j["num_layers"] = c.num_layers;
    j["propagation_steps"] = c.propagation_steps;
    j["encoder_trainable"] = c.encoder_trainable;
    j["lr"] = c.lr;
    j["epochs"] = c.epochs;
    j["seed"] = c.seed;
    j["momentum"] = c.momentum;
    j["clip_norm"] = c.clip_norm;
    j["mask_levels"] = levels_to_json(c.mask_levels);
    j["levels"] = levels_to_json(c.levels);
    j["gamma_direct_ratio"] = c.gamma_direct_ratio;
    j["beta"] = {c.beta[0], c.beta[1], c.beta[2]};
    j["alpha_trainable"] = c.alpha_trainable;
    j["tie_masked_towers"] = c.tie_masked_towers;
    j["val_every"] = c.val_every;
    j["threads"] = c.threads;
    j["train_frac"] = c.train_frac;
    return j;
}

TrainConfig config_from_json_obj(const json& j) {
    TrainConfig c;
    c.depth = j.at("depth").get<int>();
    c.decay = j.at("decay").get<double>();
    c.hidden_dim = j.at("hidden_dim").get<int>();
    c.num_layers = j.at("num_layers").get<int>();
    c.propagation_steps = j.at("propagation_steps").get<int>();
    c.encoder_trainable = j.at("encoder_trainable").get<bool>();
    c.lr = j.at("lr").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.momentum = j.at("momentum").get<double>();
    c.clip_norm = j.at("clip_norm").get<double>();
    c.mask_levels = levels_from_json(j.at("mask_levels"));
    c.levels = levels_from_json(j.at("levels"));
    c.gamma_direct_ratio = j.at("gamma_direct_ratio").get<bool>();
    for (int i = 0; i < 3; ++i) c.beta[i] = j.at("beta").at(i).get<double>();
    c.alpha_trainable = j.at("alpha_trainable").get<bool>();
    c.tie_masked_towers = j.at("tie_masked_towers").get<bool>();
    c.val_every = j.at("val_every").get<int>();
    c.threads = j.at("threads").get<int>();
    c.train_frac = j.at("train_frac").get<double>();
    return c;
}

// Stable parameter naming, mirroring GraphStitchModel::parameters() order.
std::vector<std::string> parameter_names(const GraphStitchModel& model) {
    std::vector<std::string> names;
    if (model.encoder.config.trainable) {
        names.push_back("encoder.weight");
        names.push_back("encoder.bias");
    }
    for (int i = 0; i < 3; ++i) {
        for (std::size_t l = 0; l < model.towers[i].size(); ++l) {
            const std::string base =
                std::string("tower.") + level_name(static_cast<Level>(i)) + "." +
                std::to_string(l);
            names.push_back(base + ".weight");
            names.push_back(base + ".bias");
        }
    }
    if (model.alpha_trainable) {
        for (std::size_t s = 0; s < model.stitches.size(); ++s) {
            names.push_back("stitch." + std::to_string(s) + ".alpha");
        }
    }
    for (int i = 0; i < 3; ++i) {
        names.push_back(std::string("head.") + level_name(static_cast<Level>(i)) + ".weight");
        names.push_back(std::string("head.") + level_name(static_cast<Level>(i)) + ".bias");
    }
    return names;
}

json tensor_to_json(const Tensor& t) {
    json j;
    j["rows"] = t.rows();
    j["cols"] = t.cols();
    json data = json::array();
    for (int r = 0; r < t.rows(); ++r) {
        for (int c = 0; c < t.cols(); ++c) data.push_back(t.value(r, c));
    }
    j["data"] = std::move(data);
    return j;
}

void tensor_from_json(const json& j, Tensor& t) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows != t.rows() || cols != t.cols()) {
        throw std::runtime_error("checkpoint: parameter shape mismatch");
    }
    const auto& data = j.at("data");
    if (static_cast<int>(data.size()) != rows * cols) {
        throw std::runtime_error("checkpoint: parameter size mismatch");
    }
    int k = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) t.value(r, c) = data[k++].get<double>();
    }
}

}  // namespace

std::string checkpoint_to_json(GraphStitchModel& model, const TrainConfig& config) {
    json j;
    j["format"] = kCheckpointFormat;
    j["config"] = config_to_json_obj(config);
    // Stitch units are always serialized (even when frozen) so the model is
    // fully reconstructable; encoder input width is needed to rebuild shapes.
    j["feat_dim"] = model.encoder.config.trainable
                        ? static_cast<int>(model.encoder.dense.weight.rows())
                        : model.input_dim;
    json params = json::object();
    const auto names = parameter_names(model);
    const auto tensors = model.parameters();
    for (std::size_t i = 0; i < names.size(); ++i) {
        params[names[i]] = tensor_to_json(*tensors[i]);
    }
    if (!model.alpha_trainable) {
        for (std::size_t s = 0; s < model.stitches.size(); ++s) {
            params["stitch." + std::to_string(s) + ".alpha"] =
                tensor_to_json(model.stitches[s].alpha);
        }
    }
    j["params"] = std::move(params);
    return j.dump(2);
}

void save_checkpoint(GraphStitchModel& model, const TrainConfig& config,
                     const std::filesystem::path& path) {
    atomic_write(path, checkpoint_to_json(model, config) + "\n");
}

TrainResult load_checkpoint_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kCheckpointFormat) {
        throw std::runtime_error("checkpoint: unknown format tag");
    }
    TrainResult result;
    result.config = config_from_json_obj(j.at("config"));
    const TrainConfig& c = result.config;

    EncoderConfig enc_cfg;
    enc_cfg.propagation_steps = c.propagation_steps;
    enc_cfg.hidden_dim = c.hidden_dim;
    enc_cfg.trainable = c.encoder_trainable;
    result.model = GraphStitchModel(enc_cfg, j.at("feat_dim").get<int>(), c.hidden_dim,
                                    c.num_layers, c.seed, c.alpha_trainable);
    mask_levels(result.model, c.mask_levels);

    const auto& params = j.at("params");
    const auto names = parameter_names(result.model);
    const auto tensors = result.model.parameters();
    for (std::size_t i = 0; i < names.size(); ++i) {
        tensor_from_json(params.at(names[i]), *tensors[i]);
    }
    if (!result.model.alpha_trainable) {
        for (std::size_t s = 0; s < result.model.stitches.size(); ++s) {
            tensor_from_json(params.at("stitch." + std::to_string(s) + ".alpha"),
                             result.model.stitches[s].alpha);
        }
    }
    return result;
}

TrainResult load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_checkpoint_json(buf.str());
}

std::string train_config_to_json(const TrainConfig& config) {
    return config_to_json_obj(config).dump(2);
}

TrainConfig train_config_from_json(const std::string& text) {
    return config_from_json_obj(json::parse(text));
}

std::string metrics_report_to_json(const MetricsReport& report) {
    json j;
    j["format"] = "unigad-report-v1";
    j["seed"] = report.seed;
    j["wall_time_sec"] = report.wall_time_sec;
    if (!report.config_echo.empty()) j["config"] = json::parse(report.config_echo);
    json levels = json::object();
    for (const auto& [level, m] : report.levels) {
        json lm;
        lm["auroc"] = m.auroc ? json(*m.auroc) : json(nullptr);
        lm["auprc"] = m.auprc ? json(*m.auprc) : json(nullptr);
        lm["macro_f1"] = m.macro_f1;
        lm["positives"] = m.positives;
        lm["negatives"] = m.negatives;
        levels[level_name(level)] = std::move(lm);
    }
    j["levels"] = std::move(levels);
    return j.dump(2);
}

MetricsReport metrics_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    MetricsReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    report.wall_time_sec = j.at("wall_time_sec").get<double>();
    if (j.contains("config")) report.config_echo = j["config"].dump(2);
    for (const auto& [name, lm] : j.at("levels").items()) {
        LevelMetrics m;
        if (!lm.at("auroc").is_null()) m.auroc = lm["auroc"].get<double>();
        if (!lm.at("auprc").is_null()) m.auprc = lm["auprc"].get<double>();
        m.macro_f1 = lm.at("macro_f1").get<double>();
        m.positives = lm.at("positives").get<int>();
        m.negatives = lm.at("negatives").get<int>();
        report.levels[level_from_name(name)] = m;
    }
    return report;
}

std::string history_to_json(const TrainHistory& history) {
    json j;
    j["best_epoch"] = history.best_epoch;
    j["best_val_score"] = history.best_val_score;
    j["sampler_calls"] = history.sampler_calls;
    json losses = json::array();
    for (const auto& epoch : history.losses) {
        json row = json::object();
        for (int i = 0; i < 3; ++i) {
            if (!std::isnan(epoch[i])) row[level_name(static_cast<Level>(i))] = epoch[i];
        }
        losses.push_back(std::move(row));
    }
    j["losses"] = std::move(losses);
    return j.dump(2);
}

}  // namespace unigad
