#include "mitensor/dataset.hpp"

#include "mitensor/csv_io.hpp"
#include "mitensor/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace fs = std::filesystem;

namespace mitensor {

const char* to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::NonDemented: return "NonDemented";
        case ClassLabel::VeryMildDemented: return "VeryMildDemented";
        case ClassLabel::MildDemented: return "MildDemented";
        case ClassLabel::ModerateDemented: return "ModerateDemented";
    }
    return "?";
}

std::optional<ClassLabel> label_from_string(std::string_view name) {
    for (ClassLabel label : all_class_labels())
        if (name == to_string(label)) return label;
    return std::nullopt;
}

namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

} // namespace

DatasetManifest scan_dataset(const fs::path& root) {
    if (!fs::exists(root) || !fs::is_directory(root))
        throw FileNotReadable("dataset root is not a readable directory: " + root.string());

    DatasetManifest manifest;
    manifest.root = root;

    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (!label_from_string(name))
            manifest.warnings.push_back("ignoring unknown subdirectory: " +
                                        entry.path().string());
    }

    for (ClassLabel label : all_class_labels()) {
        const fs::path class_dir = root / to_string(label);
        if (!fs::exists(class_dir) || !fs::is_directory(class_dir)) continue;
        for (const auto& entry : fs::recursive_directory_iterator(class_dir)) {
            if (entry.is_regular_file() && has_image_extension(entry.path()))
                manifest.entries.push_back({entry.path(), label});
        }
    }

    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) {
                  return a.path.generic_string() < b.path.generic_string();
              });

    if (manifest.entries.empty())
        throw EmptyDataset("no *.png/*.jpg/*.jpeg files under class directories of " +
                           root.string());
    return manifest;
}

DatasetManifest load_manifest_csv(const fs::path& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw FileNotReadable("cannot open manifest: " + csv_path.string());

    DatasetManifest manifest;
    manifest.root = csv_path.parent_path();

    std::string line;
    if (!std::getline(in, line)) throw EmptyDataset("empty manifest: " + csv_path.string());
    const auto header = csvio::parse_line(line);
    if (header.size() < 2 || header[0] != "path" || header[1] != "label")
        throw Error("manifest CSV must start with header 'path,label': " + csv_path.string());

    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = csvio::parse_line(line);
        if (fields.size() < 2) throw Error("manifest row needs path and label: " + line);
        const auto label = label_from_string(fields[1]);
        if (!label) throw Error("unknown class label in manifest: " + fields[1]);
        fs::path p = fields[0];
        if (p.is_relative()) p = manifest.root / p;
        manifest.entries.push_back({std::move(p), *label});
    }

    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) {
                  return a.path.generic_string() < b.path.generic_string();
              });

    if (manifest.entries.empty())
        throw EmptyDataset("manifest lists no images: " + csv_path.string());
    return manifest;
}

} // namespace mitensor
