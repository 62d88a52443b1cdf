#include "unigad/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace unigad {

std::set<Level> parse_level_set(const std::string& text) {
    std::set<Level> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        // trim surrounding whitespace
        const auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = tok.find_last_not_of(" \t");
        out.insert(level_from_name(tok.substr(b, e - b + 1)));
    }
    return out;
}

void apply_config_entry(TrainConfig& c, const std::string& key, const std::string& value) {
    try {
        if (key == "depth") {
            c.depth = std::stoi(value);
        } else if (key == "decay") {
            c.decay = std::stod(value);
        } else if (key == "hidden_dim") {
            c.hidden_dim = std::stoi(value);
        } else if (key == "num_layers") {
            c.num_layers = std::stoi(value);
        } else if (key == "propagation_steps") {
            c.propagation_steps = std::stoi(value);
        } else if (key == "lr") {
            c.lr = std::stod(value);
        } else if (key == "epochs") {
            c.epochs = std::stoi(value);
        } else if (key == "seed") {
            c.seed = std::stoull(value);
        } else if (key == "momentum") {
            c.momentum = std::stod(value);
        } else if (key == "clip_norm") {
            c.clip_norm = std::stod(value);
        } else if (key == "levels") {
            c.levels = parse_level_set(value);
        } else if (key == "mask_levels") {
            c.mask_levels = parse_level_set(value);
        } else if (key == "gamma_mode") {
            if (value == "inverted") {
                c.gamma_direct_ratio = false;
            } else if (value == "direct") {
                c.gamma_direct_ratio = true;
            } else {
                throw std::invalid_argument("gamma_mode must be 'inverted' or 'direct'");
            }
        } else if (key == "encoder_trainable") {
            c.encoder_trainable = (value == "true" || value == "1");
        } else if (key == "alpha_trainable") {
            c.alpha_trainable = (value == "true" || value == "1");
        } else if (key == "tie_masked_towers") {
            c.tie_masked_towers = (value == "true" || value == "1");
        } else if (key == "val_every") {
            c.val_every = std::stoi(value);
        } else if (key == "threads") {
            c.threads = std::stoi(value);
        } else if (key == "train_frac") {
            c.train_frac = std::stod(value);
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for config key '" + key + "': " + value);
    }
}

void apply_config_file(TrainConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t\r");
            if (x == std::string::npos) return std::string();
            const auto y = s.find_last_not_of(" \t\r");
            return s.substr(x, y - x + 1);
        };
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

}  // namespace unigad
