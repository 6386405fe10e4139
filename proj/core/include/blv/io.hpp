#pragma once

#include <span>
#include <string>
#include <vector>

#include "blv/model.hpp"
#include "blv/quotient.hpp"

namespace blv {

struct ModelDocument {
  Model model;
  std::vector<FactorMap> maps;
};

// JSON schema:
//   {
//     "labels": ["id", ...],                   // optional, defaults to indices
//     "kernel": [[entry, ...], ...],           // dense rows; an entry is a JSON
//                                              // number or an exact string "1/3"
//     "kernel_sparse": [[x, y, entry], ...],   // alternative to "kernel"
//     "mu": [entry, ...],                      // optional
//     "maps": [{"name": "...", "labeling": [0-based block per state],
//               "block_labels": ["...", ...]}, ...]   // block_labels optional
//   }
// Floating-point entries are converted exactly (binary value); use strings
// for non-dyadic rationals.
ModelDocument parse_model_document(const std::string& json_text);
ModelDocument load_model_document(const std::string& path);

// Deterministic, round-trippable dump with rationals as exact "p/q"
// strings. Kernels larger than dense_limit states are written sparse.
std::string serialize_model_document(const Model& m, std::span<const FactorMap> maps,
                                     int dense_limit = 512);
void save_model_document(const std::string& path, const Model& m,
                         std::span<const FactorMap> maps, int dense_limit = 512);

}  // namespace blv
