#include "mitensor/commands.hpp"
#include "mitensor/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct KernelFlags {
    std::string kernel = "rbf";
    double gamma = 0.0; // 0 = auto: 1 / (dim * pooled variance)
    double c = 1.0;
    double tol = 1e-3;
    int max_passes = 10;
    int max_sweeps = 1000;
    std::uint64_t seed = 0;
    std::string features = "lambda1,lambda2";
    double test_fraction = 0.2;
    int threads = 0;
};

void add_train_flags(CLI::App* cmd, KernelFlags& flags) {
    cmd->add_option("--seed", flags.seed, "RNG seed for splitting and SMO pair selection")
        ->capture_default_str();
    cmd->add_option("--test-fraction", flags.test_fraction,
                    "held-out fraction for the stratified split")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9))
        ->capture_default_str();
    cmd->add_option("--c", flags.c, "soft-margin box constraint C")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--kernel", flags.kernel, "kernel kind")
        ->check(CLI::IsMember({"linear", "rbf"}))
        ->capture_default_str();
    cmd->add_option("--gamma", flags.gamma,
                    "RBF gamma; 0 selects 1/(num_features * pooled variance)")
        ->capture_default_str();
    cmd->add_option("--features", flags.features,
                    "comma-separated subset of lambda1,lambda2,delta,mass")
        ->capture_default_str();
    cmd->add_option("--tol", flags.tol, "KKT violation tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-passes", flags.max_passes,
                    "consecutive quiet sweeps before SMO stops")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-sweeps", flags.max_sweeps, "hard cap on SMO sweeps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

mitensor::TrainConfig to_train_config(const KernelFlags& flags) {
    mitensor::TrainConfig config;
    config.c = flags.c;
    config.kernel = *mitensor::kernel_from_string(flags.kernel);
    config.gamma = flags.gamma;
    config.tol = flags.tol;
    config.max_passes = flags.max_passes;
    config.max_sweeps = flags.max_sweeps;
    config.seed = flags.seed;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inertia-tensor image features and kernel-SVM classification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    KernelFlags flags;

    // extract
    std::string extract_root, extract_manifest, extract_output;
    auto* extract = app.add_subcommand("extract", "decode a dataset and write the feature CSV");
    extract->add_option("root", extract_root, "dataset root (directory per class)");
    extract->add_option("--manifest", extract_manifest, "manifest CSV override (path,label)");
    extract->add_option("--output", extract_output, "output feature CSV")->required();
    extract->add_option("--threads", flags.threads, "worker threads (0 = auto)")
        ->capture_default_str();

    // train
    std::string train_features, train_root, train_manifest, train_model, train_report;
    auto* train = app.add_subcommand("train", "train the one-vs-rest kernel SVM");
    train->add_option("features", train_features, "feature CSV from `extract`");
    train->add_option("--dataset", train_root, "extract features directly from this root");
    train->add_option("--manifest", train_manifest, "manifest CSV override");
    train->add_option("--output", train_model, "output model file")->required();
    train->add_option("--report", train_report, "also write the training report as JSON");
    train->add_option("--threads", flags.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    add_train_flags(train, flags);

    // evaluate
    std::string eval_model, eval_features, eval_output;
    auto* evaluate = app.add_subcommand("evaluate", "score a model against a feature CSV");
    evaluate->add_option("model", eval_model, "model file")->required();
    evaluate->add_option("features", eval_features, "labeled feature CSV")->required();
    evaluate->add_option("--output", eval_output, "write the metrics report as JSON");
    evaluate->add_option("--threads", flags.threads, "worker threads (0 = auto)")
        ->capture_default_str();

    // predict
    std::string predict_model;
    std::vector<std::string> predict_images;
    auto* predict = app.add_subcommand("predict", "classify individual images");
    predict->add_option("model", predict_model, "model file")->required();
    predict->add_option("images", predict_images, "image files")->required();

    // report
    std::string report_features, report_output;
    auto* report = app.add_subcommand("report", "emit scatter/averages/trend files");
    report->add_option("features", report_features, "feature CSV")->required();
    report->add_option("--output", report_output, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extract) {
            mitensor::ExtractOptions options;
            options.dataset_root = extract_root;
            if (!extract_manifest.empty()) options.manifest_csv = extract_manifest;
            options.output_csv = extract_output;
            options.threads = flags.threads;
            return mitensor::cmd_extract(options, std::cout);
        }
        if (*train) {
            mitensor::TrainOptions options;
            if (!train_features.empty()) options.features_csv = train_features;
            if (!train_root.empty()) options.dataset_root = train_root;
            if (!train_manifest.empty()) options.manifest_csv = train_manifest;
            options.model_out = train_model;
            if (!train_report.empty()) options.report_json = train_report;
            options.test_fraction = flags.test_fraction;
            options.train = to_train_config(flags);
            options.selection = mitensor::parse_selection(flags.features);
            options.threads = flags.threads;
            mitensor::cmd_train(options, std::cout);
            return mitensor::kExitOk;
        }
        if (*evaluate) {
            mitensor::EvaluateOptions options;
            options.model_file = eval_model;
            options.features_csv = eval_features;
            if (!eval_output.empty()) options.output_json = eval_output;
            options.threads = flags.threads;
            mitensor::cmd_evaluate(options, std::cout);
            return mitensor::kExitOk;
        }
        if (*predict) {
            mitensor::PredictOptions options;
            options.model_file = predict_model;
            options.images.assign(predict_images.begin(), predict_images.end());
            return mitensor::cmd_predict(options, std::cout, std::cerr);
        }
        if (*report) {
            mitensor::ReportOptions options;
            options.features_csv = report_features;
            options.output_dir = report_output;
            mitensor::cmd_report(options, std::cout);
            return mitensor::kExitOk;
        }
    } catch (const mitensor::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return mitensor::kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return mitensor::kExitFatal;
    }
    return mitensor::kExitFatal;
}
