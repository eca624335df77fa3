// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dataset.hpp"

namespace lrctl {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parseDouble(const std::string& key, const std::string& value)
{
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a real number, got '" + value + "'");
    }
}

long long parseInt(const std::string& key, const std::string& value)
{
    long long parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    return parsed;
}

std::vector<int> parseIntList(const std::string& key, const std::string& value)
{
    std::vector<int> out;
    if (trim(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<int>(parseInt(key, trim(item))));
    return out;
}

std::string formatDouble(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void applyConfigKey(ExperimentConfig& config, const std::string& key, const std::string& value,
                    bool& explicitGainP, bool& explicitGainD)
{
    if (key == "schedule") {
        if (!scheduleKindFromString(value, config.schedule.kind))
            throw ConfigError("config: key 'schedule' expects one of constant, time_inverse, "
                              "exp_sine, p, pd, epd; got '" + value + "'");
    } else if (key == "initial_lr") {
        config.schedule.initialLr = parseDouble(key, value);
    } else if (key == "delta") {
        config.schedule.timeDecay = parseDouble(key, value);
    } else if (key == "alpha") {
        config.schedule.expDecayRate = parseDouble(key, value);
    } else if (key == "beta") {
        config.schedule.sineFrequency = parseDouble(key, value);
    } else if (key == "gamma") {
        config.schedule.sineAmplitude = parseDouble(key, value);
    } else if (key == "kp") {
        config.schedule.gainP = parseDouble(key, value);
        explicitGainP = true;
    } else if (key == "kd") {
        config.schedule.gainD = parseDouble(key, value);
        explicitGainD = true;
    } else if (key == "epochs_per_batch") {
        config.schedule.epochsPerBatch = static_cast<int>(parseInt(key, value));
    } else if (key == "runs") {
        config.runs = static_cast<int>(parseInt(key, value));
    } else if (key == "base_seed") {
        config.baseSeed = parseInt(key, value);
    } else if (key == "stream") {
        if (value == "synthetic") config.stream.source = StreamSpec::Source::Synthetic;
        else if (value == "idx") config.stream.source = StreamSpec::Source::Idx;
        else throw ConfigError("config: key 'stream' expects synthetic or idx, got '" + value + "'");
    } else if (key == "num_classes") {
        config.stream.numClasses = static_cast<int>(parseInt(key, value));
    } else if (key == "feature_dim") {
        config.stream.featureDim = static_cast<int>(parseInt(key, value));
    } else if (key == "spread") {
        config.stream.spread = parseDouble(key, value);
    } else if (key == "test_size") {
        config.stream.testSize = static_cast<std::size_t>(parseInt(key, value));
    } else if (key == "batch_size") {
        config.stream.batchSize = static_cast<std::size_t>(parseInt(key, value));
    } else if (key == "num_batches") {
        config.stream.numBatches = static_cast<std::size_t>(parseInt(key, value));
    } else if (key == "idx_train_images") {
        config.stream.idxTrainImages = value;
    } else if (key == "idx_train_labels") {
        config.stream.idxTrainLabels = value;
    } else if (key == "idx_test_images") {
        config.stream.idxTestImages = value;
    } else if (key == "idx_test_labels") {
        config.stream.idxTestLabels = value;
    } else if (key == "hidden_layers") {
        config.plant.hiddenLayers = parseIntList(key, value);
    } else if (key == "mini_batch_size") {
        config.plant.miniBatchSize = static_cast<int>(parseInt(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

ExperimentConfig parseConfig(const std::string& text)
{
    ExperimentConfig config;
    bool explicitGainP = false;
    bool explicitGainD = false;

    std::stringstream ss(text);
    std::string line;
    int lineNumber = 0;
    while (std::getline(ss, line)) {
        ++lineNumber;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineNumber) +
                              " is not a key=value assignment");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineNumber) + " has an empty key");
        applyConfigKey(config, key, value, explicitGainP, explicitGainD);
    }

    // Unset gains track the initial rate.
    if (!explicitGainP) config.schedule.gainP = config.schedule.initialLr;
    if (!explicitGainD) config.schedule.gainD = 5.0 * config.schedule.initialLr;

    try {
        config.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return config;
}

ExperimentConfig parseConfigFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseConfig(buffer.str());
}

std::string renderConfig(const ExperimentConfig& config)
{
    std::string out;
    const auto emit = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };

    emit("schedule", scheduleKindName(config.schedule.kind));
    emit("initial_lr", formatDouble(config.schedule.initialLr));
    emit("delta", formatDouble(config.schedule.timeDecay));
    emit("alpha", formatDouble(config.schedule.expDecayRate));
    emit("beta", formatDouble(config.schedule.sineFrequency));
    emit("gamma", formatDouble(config.schedule.sineAmplitude));
    emit("kp", formatDouble(config.schedule.gainP));
    emit("kd", formatDouble(config.schedule.gainD));
    emit("epochs_per_batch", std::to_string(config.schedule.epochsPerBatch));
    emit("runs", std::to_string(config.runs));
    emit("base_seed", std::to_string(config.baseSeed));
    emit("stream", config.stream.source == StreamSpec::Source::Synthetic ? "synthetic" : "idx");
    emit("num_classes", std::to_string(config.stream.numClasses));
    emit("feature_dim", std::to_string(config.stream.featureDim));
    emit("spread", formatDouble(config.stream.spread));
    emit("test_size", std::to_string(config.stream.testSize));
    emit("batch_size", std::to_string(config.stream.batchSize));
    emit("num_batches", std::to_string(config.stream.numBatches));
    if (config.stream.source == StreamSpec::Source::Idx) {
        emit("idx_train_images", config.stream.idxTrainImages);
        emit("idx_train_labels", config.stream.idxTrainLabels);
        emit("idx_test_images", config.stream.idxTestImages);
        emit("idx_test_labels", config.stream.idxTestLabels);
    }
    std::string layers;
    for (std::size_t i = 0; i < config.plant.hiddenLayers.size(); ++i) {
        if (i) layers += ",";
        layers += std::to_string(config.plant.hiddenLayers[i]);
    }
    emit("hidden_layers", layers);
    emit("mini_batch_size", std::to_string(config.plant.miniBatchSize));
    return out;
}

}  // namespace lrctl
