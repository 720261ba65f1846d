#include "mitensor/commands.hpp"

#include "mitensor/errors.hpp"
#include "mitensor/image_io.hpp"
#include "mitensor/inertia.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace mitensor {

ExtractedBatch extract_from_manifest(const DatasetManifest& manifest, int threads) {
    const auto n = static_cast<std::ptrdiff_t>(manifest.entries.size());
    std::vector<std::optional<FeatureRow>> slots(manifest.entries.size());
    std::vector<std::string> errors(manifest.entries.size());

    [[maybe_unused]] const int nthreads = detail::resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 8) if (threads != 1) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& entry = manifest.entries[i];
        try {
            const GrayImage image = load_image(entry.path);
            const InertiaTensor tensor = compute_tensor(image);
            const EigenPair eig = eigenvalues(tensor);
            FeatureRow row;
            row.path = entry.path.generic_string();
            row.label = entry.label;
            row.lambda1 = eig.lambda1;
            row.lambda2 = eig.lambda2;
            row.delta = asymmetry(eig);
            row.mass = total_mass(image);
            row.i00 = tensor.i00;
            row.i01 = tensor.i01;
            row.i11 = tensor.i11;
            slots[i] = std::move(row);
        } catch (const Error& e) {
            errors[i] = entry.path.generic_string() + ": " + e.what();
        }
    }

    ExtractedBatch batch;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i])
            batch.rows.push_back(std::move(*slots[i]));
        else
            batch.failures.push_back(errors[i]);
    }
    return batch;
}

namespace {

DatasetManifest resolve_manifest(const std::optional<fs::path>& manifest_csv,
                                 const std::optional<fs::path>& dataset_root,
                                 std::ostream& log) {
    DatasetManifest manifest;
    if (manifest_csv)
        manifest = load_manifest_csv(*manifest_csv);
    else if (dataset_root)
        manifest = scan_dataset(*dataset_root);
    else
        throw Error("either a dataset root or a manifest CSV is required");
    for (const auto& warning : manifest.warnings) log << "warning: " << warning << '\n';
    return manifest;
}

} // namespace

int cmd_extract(const ExtractOptions& options, std::ostream& log) {
    const DatasetManifest manifest =
        resolve_manifest(options.manifest_csv,
                         options.dataset_root.empty()
                             ? std::optional<fs::path>{}
                             : std::optional<fs::path>{options.dataset_root},
                         log);

    const ExtractedBatch batch = extract_from_manifest(manifest, options.threads);
    write_features_csv(options.output_csv, batch.rows);
    log << "wrote " << batch.rows.size() << " rows to " << options.output_csv.string() << '\n';

    if (!batch.failures.empty()) {
        const fs::path sidecar = options.output_csv.parent_path() / "errors.log";
        std::ofstream err_log(sidecar, std::ios::binary);
        if (!err_log) throw FileNotReadable("cannot open for writing: " + sidecar.string());
        for (const auto& failure : batch.failures) err_log << failure << '\n';
        log << batch.failures.size() << " image(s) skipped; see " << sidecar.string() << '\n';
        return kExitPartial;
    }
    return kExitOk;
}

namespace {

std::vector<FeatureRow> load_rows(const TrainOptions& options, std::ostream& log) {
    if (options.features_csv) return read_features_csv(*options.features_csv);
    const DatasetManifest manifest =
        resolve_manifest(options.manifest_csv, options.dataset_root, log);
    ExtractedBatch batch = extract_from_manifest(manifest, options.threads);
    for (const auto& failure : batch.failures) log << "warning: skipped " << failure << '\n';
    return std::move(batch.rows);
}

} // namespace

TrainResult cmd_train(const TrainOptions& options, std::ostream& log) {
    const std::vector<FeatureRow> rows = load_rows(options, log);
    const std::vector<FeatureVector> vectors =
        rows_to_vectors(rows, options.selection, /*require_label=*/true);
    if (vectors.size() < 2)
        throw InsufficientData("training needs at least 2 labeled feature rows");

    std::vector<ClassLabel> labels(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) labels[i] = *vectors[i].label;
    const SplitIndices split = stratified_split(
        labels, SplitConfig{options.test_fraction, options.train.seed, options.stratified});
    auto [train_set, test_set] = apply_split<FeatureVector>(vectors, split);

    MulticlassConfig config;
    config.train = options.train;
    config.selection = options.selection;
    TrainResult result{train_multiclass(train_set, config, options.threads),
                       Metrics{},
                       train_set.size(),
                       test_set.size()};
    result.holdout = evaluate(result.model, test_set, options.threads);

    save_model(options.model_out, result.model);

    log << "trained on " << result.train_size << " samples, held out " << result.test_size
        << " (test fraction " << csvio::format_double(options.test_fraction) << ")\n";
    log << "kernel " << to_string(result.model.config.train.kernel) << ", C "
        << csvio::format_double(result.model.config.train.c) << ", gamma "
        << csvio::format_double(result.model.resolved_gamma) << ", features "
        << format_selection(result.model.selection) << '\n';
    for (int k = 0; k < kNumClasses; ++k) {
        const auto& m = result.model.models[k];
        log << "class " << to_string(static_cast<ClassLabel>(k)) << ": ";
        if (m.degenerate)
            log << "degenerate (absent from training data)\n";
        else
            log << m.support_vectors.size() << " support vectors, "
                << (m.converged ? "converged" : "hit sweep cap") << '\n';
    }
    log << "holdout accuracy: " << csvio::format_double(result.holdout.accuracy) << '\n';
    log << "model written to " << options.model_out.string() << '\n';

    if (options.report_json) {
        std::ofstream out(*options.report_json, std::ios::binary);
        if (!out)
            throw FileNotReadable("cannot open for writing: " + options.report_json->string());
        out << metrics_report_json(result.holdout, class_statistics(test_set));
    }
    return result;
}

EvaluateResult cmd_evaluate(const EvaluateOptions& options, std::ostream& log) {
    const MultiClassModel model = load_model(options.model_file);
    const std::vector<FeatureRow> rows = read_features_csv(options.features_csv);
    if (rows.empty()) throw EmptyTestSet("feature CSV has no rows: " +
                                         options.features_csv.string());
    const std::vector<FeatureVector> vectors =
        rows_to_vectors(rows, model.selection, /*require_label=*/true);

    EvaluateResult result;
    result.metrics = evaluate(model, vectors, options.threads);
    result.stats = class_statistics(vectors);

    log << metrics_report_text(result.metrics, result.stats);
    if (options.output_json) {
        std::ofstream out(*options.output_json, std::ios::binary);
        if (!out)
            throw FileNotReadable("cannot open for writing: " + options.output_json->string());
        out << metrics_report_json(result.metrics, result.stats);
    }
    return result;
}

int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err) {
    const MultiClassModel model = load_model(options.model_file);
    bool any_failed = false;
    for (const auto& path : options.images) {
        try {
            const GrayImage image = load_image(path);
            const Prediction pred = predict(model, extract_features(image));
            out << csvio::escape_field(path.generic_string()) << ',' << to_string(pred.label);
            for (double s : pred.scores) out << ',' << csvio::format_double(s);
            out << '\n';
        } catch (const Error& e) {
            out << csvio::escape_field(path.generic_string()) << ",ERROR,,,,\n";
            err << path.generic_string() << ": " << e.what() << '\n';
            any_failed = true;
        }
    }
    return any_failed ? kExitPartial : kExitOk;
}

void cmd_report(const ReportOptions& options, std::ostream& log) {
    const std::vector<FeatureRow> rows = read_features_csv(options.features_csv);
    if (rows.empty())
        throw EmptyDataset("feature CSV has no rows: " + options.features_csv.string());
    const FeatureSelection all = {Feature::Lambda1, Feature::Lambda2, Feature::Delta,
                                  Feature::Mass};
    const std::vector<FeatureVector> vectors = rows_to_vectors(rows, all, /*require_label=*/true);

    fs::create_directories(options.output_dir);

    {
        std::ofstream scatter(options.output_dir / "scatter.csv", std::ios::binary);
        scatter << "label,lambda1,lambda2\n";
        for (const auto& fv : vectors)
            scatter << to_string(*fv.label) << ',' << csvio::format_double(fv.lambda1) << ','
                    << csvio::format_double(fv.lambda2) << '\n';
    }

    const ClassStats stats = class_statistics(vectors);
    {
        std::ofstream averages(options.output_dir / "class_averages.csv", std::ios::binary);
        averages << "label,count,mean_lambda1,mean_lambda2,mean_asymmetry,mean_mass\n";
        for (int k = 0; k < kNumClasses; ++k) {
            const auto& pc = stats.per_class[k];
            if (pc.count == 0) continue;
            averages << to_string(static_cast<ClassLabel>(k)) << ',' << pc.count << ','
                     << csvio::format_double(pc.mean_lambda1) << ','
                     << csvio::format_double(pc.mean_lambda2) << ','
                     << csvio::format_double(pc.mean_asymmetry) << ','
                     << csvio::format_double(pc.mean_mass) << '\n';
        }
    }

    {
        std::ofstream trend(options.output_dir / "trend.txt", std::ios::binary);
        trend << trend_report_text(stats);
    }

    log << "reports written to " << options.output_dir.string() << '\n';
}

} // namespace mitensor
