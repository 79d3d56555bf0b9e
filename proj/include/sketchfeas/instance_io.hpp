#pragma once

#include <filesystem>
#include <string>

#include "sketchfeas/instance.hpp"

namespace sketchfeas {

// Versioned JSON instance document:
//   {"version": 1, "m": .., "n": .., "domain": "lp"|"ip",
//    "A": [row-major m·n reals], "b": [m reals],
//    "label": "feasible"|"infeasible", "witness": [..], "certificate": [..],
//    "provenance": {"dist": "uniform"|"exp"|"gamma", "seed": ..}}
// The last four keys are optional. Reals are written in shortest round-trip
// form, so write → read → write is byte-identical.
inline constexpr int kInstanceFormatVersion = 1;

std::string write_instance(const FeasInstance& inst);
FeasInstance read_instance(const std::string& text);

void save_instance(const std::filesystem::path& path, const FeasInstance& inst);
FeasInstance load_instance(const std::filesystem::path& path);

}  // namespace sketchfeas
