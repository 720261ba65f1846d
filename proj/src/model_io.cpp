#include "mitensor/model_io.hpp"

#include "mitensor/csv_io.hpp"
#include "mitensor/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

using nlohmann::json;

namespace mitensor {

namespace {

json kernel_to_json(const KernelSpec& kernel) {
    return {{"kind", to_string(kernel.kind)}, {"gamma", kernel.gamma}};
}

KernelSpec kernel_from_json(const json& j) {
    const auto kind = kernel_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error("model file: unknown kernel kind");
    return {*kind, j.at("gamma").get<double>()};
}

json binary_to_json(const BinarySvmModel& model) {
    return {{"support_vectors", model.support_vectors},
            {"alphas", model.alphas},
            {"signs", model.signs},
            {"bias", model.bias},
            {"kernel", kernel_to_json(model.kernel)},
            {"c", model.c},
            {"converged", model.converged},
            {"degenerate", model.degenerate}};
}

BinarySvmModel binary_from_json(const json& j) {
    BinarySvmModel model;
    model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
    model.alphas = j.at("alphas").get<std::vector<double>>();
    model.signs = j.at("signs").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.kernel = kernel_from_json(j.at("kernel"));
    model.c = j.at("c").get<double>();
    model.converged = j.at("converged").get<bool>();
    model.degenerate = j.at("degenerate").get<bool>();
    if (model.alphas.size() != model.support_vectors.size() ||
        model.signs.size() != model.support_vectors.size())
        throw Error("model file: support vector arrays disagree in length");
    return model;
}

} // namespace

void save_model(const std::filesystem::path& path, const MultiClassModel& model) {
    json j;
    j["format_version"] = kModelFormatVersion;
    std::vector<std::string> names;
    for (Feature f : model.selection) names.emplace_back(to_string(f));
    j["feature_selection"] = names;
    j["standardizer"] = {{"mean", model.standardizer.mean},
                         {"stddev", model.standardizer.stddev}};
    j["config"] = {{"c", model.config.train.c},
                   {"kernel", to_string(model.config.train.kernel)},
                   {"gamma", model.config.train.gamma},
                   {"resolved_gamma", model.resolved_gamma},
                   {"tol", model.config.train.tol},
                   {"max_passes", model.config.train.max_passes},
                   {"max_sweeps", model.config.train.max_sweeps},
                   {"seed", model.config.train.seed}};
    json classes = json::array();
    for (int k = 0; k < kNumClasses; ++k) {
        json c = binary_to_json(model.models[k]);
        c["label"] = to_string(static_cast<ClassLabel>(k));
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileNotReadable("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

MultiClassModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotReadable("cannot open model: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("model file is not valid JSON: " + path.string() + " (" + e.what() + ")");
    }

    const int version = j.value("format_version", -1);
    if (version != kModelFormatVersion)
        throw VersionMismatch("model format version " + std::to_string(version) +
                              " not supported; expected " +
                              std::to_string(kModelFormatVersion));

    MultiClassModel model;
    try {
        for (const auto& name : j.at("feature_selection")) {
            const auto f = feature_from_string(name.get<std::string>());
            if (!f) throw Error("model file: unknown feature name");
            model.selection.push_back(*f);
        }
        model.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
        model.standardizer.stddev =
            j.at("standardizer").at("stddev").get<std::vector<double>>();
        const auto& cfg = j.at("config");
        model.config.selection = model.selection;
        model.config.train.c = cfg.at("c").get<double>();
        const auto kind = kernel_from_string(cfg.at("kernel").get<std::string>());
        if (!kind) throw Error("model file: unknown kernel kind");
        model.config.train.kernel = *kind;
        model.config.train.gamma = cfg.at("gamma").get<double>();
        model.resolved_gamma = cfg.at("resolved_gamma").get<double>();
        model.config.train.tol = cfg.at("tol").get<double>();
        model.config.train.max_passes = cfg.at("max_passes").get<int>();
        model.config.train.max_sweeps = cfg.at("max_sweeps").get<int>();
        model.config.train.seed = cfg.at("seed").get<std::uint64_t>();
        const auto& classes = j.at("classes");
        if (classes.size() != kNumClasses)
            throw Error("model file: expected one binary model per class");
        for (int k = 0; k < kNumClasses; ++k) model.models[k] = binary_from_json(classes[k]);
    } catch (const json::exception& e) {
        throw Error("model file is structurally invalid: " + path.string() + " (" + e.what() +
                    ")");
    }
    if (model.standardizer.dim() != model.selection.size())
        throw Error("model file: standardizer dimension mismatch");
    return model;
}

namespace {

json stats_to_json(const ClassStats& stats) {
    json arr = json::array();
    for (int k = 0; k < kNumClasses; ++k) {
        const auto& pc = stats.per_class[k];
        json entry = {{"label", to_string(static_cast<ClassLabel>(k))}, {"count", pc.count}};
        if (pc.count > 0) {
            entry["mean_asymmetry"] = pc.mean_asymmetry;
            entry["mean_mass"] = pc.mean_mass;
            entry["mean_lambda1"] = pc.mean_lambda1;
            entry["mean_lambda2"] = pc.mean_lambda2;
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

json chain_to_json(const TrendReport::Chain& chain) {
    return {{"pass", chain.pass},
            {"margins", chain.margins},
            {"first_violation", chain.first_violation}};
}

} // namespace

std::string metrics_report_json(const Metrics& metrics, const ClassStats& stats) {
    json j;
    j["accuracy"] = metrics.accuracy;
    j["total"] = metrics.total;
    j["confusion"] = metrics.confusion;
    json per_class = json::array();
    for (int k = 0; k < kNumClasses; ++k) {
        per_class.push_back({{"label", to_string(static_cast<ClassLabel>(k))},
                             {"precision", metrics.precision[k]},
                             {"precision_defined", metrics.precision_defined[k]},
                             {"recall", metrics.recall[k]},
                             {"recall_defined", metrics.recall_defined[k]}});
    }
    j["per_class"] = std::move(per_class);
    j["class_stats"] = stats_to_json(stats);
    try {
        const TrendReport trend = trend_check(stats);
        j["trend"] = {{"mass", chain_to_json(trend.mass)},
                      {"asymmetry", chain_to_json(trend.asymmetry)}};
    } catch (const MissingClass& e) {
        j["trend"] = {{"missing_class", e.what()}};
    }
    return j.dump(2) + "\n";
}

std::string metrics_report_text(const Metrics& metrics, const ClassStats& stats) {
    std::ostringstream out;
    out << "accuracy: " << csvio::format_double(metrics.accuracy) << " (" << metrics.total
        << " samples)\n";
    out << "confusion matrix (rows = true, cols = predicted):\n";
    for (int k = 0; k < kNumClasses; ++k) {
        out << "  " << to_string(static_cast<ClassLabel>(k)) << ":";
        for (int j = 0; j < kNumClasses; ++j) out << ' ' << metrics.confusion[k][j];
        out << '\n';
    }
    out << "per-class precision / recall:\n";
    for (int k = 0; k < kNumClasses; ++k) {
        out << "  " << to_string(static_cast<ClassLabel>(k)) << ": "
            << csvio::format_double(metrics.precision[k])
            << (metrics.precision_defined[k] ? "" : " (no predictions)") << " / "
            << csvio::format_double(metrics.recall[k])
            << (metrics.recall_defined[k] ? "" : " (no samples)") << '\n';
    }
    out << "class statistics (count, mean asymmetry, mean mass):\n";
    for (int k = 0; k < kNumClasses; ++k) {
        const auto& pc = stats.per_class[k];
        out << "  " << to_string(static_cast<ClassLabel>(k)) << ": " << pc.count;
        if (pc.count > 0)
            out << ", " << csvio::format_double(pc.mean_asymmetry) << ", "
                << csvio::format_double(pc.mean_mass);
        out << '\n';
    }
    out << trend_report_text(stats);
    return out.str();
}

std::string trend_report_text(const ClassStats& stats) {
    std::ostringstream out;
    auto chain_line = [&](const char* name, const TrendReport::Chain& chain) {
        out << name << " chain: " << (chain.pass ? "PASS" : "FAIL");
        if (!chain.pass)
            out << " at pair (" << to_string(static_cast<ClassLabel>(chain.first_violation))
                << ", " << to_string(static_cast<ClassLabel>(chain.first_violation + 1)) << ")";
        out << "; margins:";
        for (double m : chain.margins) out << ' ' << csvio::format_double(m);
        out << '\n';
    };
    try {
        const TrendReport trend = trend_check(stats);
        chain_line("mass", trend.mass);
        chain_line("asymmetry", trend.asymmetry);
    } catch (const MissingClass& e) {
        out << "MissingClass: " << e.what() << '\n';
    }
    return out.str();
}

} // namespace mitensor
