#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mitensor {

/// The four dementia stages, ordered by severity.  The integer codes are
/// stable and double as indices everywhere a per-class array appears.
enum class ClassLabel : int {
    NonDemented = 0,
    VeryMildDemented = 1,
    MildDemented = 2,
    ModerateDemented = 3,
};

inline constexpr int kNumClasses = 4;

inline constexpr std::array<ClassLabel, kNumClasses> all_class_labels() {
    return {ClassLabel::NonDemented, ClassLabel::VeryMildDemented,
            ClassLabel::MildDemented, ClassLabel::ModerateDemented};
}

const char* to_string(ClassLabel label);
std::optional<ClassLabel> label_from_string(std::string_view name);

inline int label_code(ClassLabel label) { return static_cast<int>(label); }

struct ManifestEntry {
    std::filesystem::path path;
    ClassLabel label;
};

/// Labeled file listing for a directory-per-class dataset.  Entry order is
/// lexicographic by path, independent of filesystem enumeration order.
struct DatasetManifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;
    std::vector<std::string> warnings; // e.g. ignored unknown subdirectories
};

/// Scans a root containing NonDemented/, VeryMildDemented/, MildDemented/,
/// ModerateDemented/ subdirectories for *.png, *.jpg, *.jpeg files.
/// Throws EmptyDataset when no image is found.
DatasetManifest scan_dataset(const std::filesystem::path& root);

/// Manifest override for non-standard layouts: a CSV with header
/// `path,label`; relative paths are resolved against the CSV's directory.
DatasetManifest load_manifest_csv(const std::filesystem::path& csv_path);

} // namespace mitensor
