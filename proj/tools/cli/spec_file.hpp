#pragma once

#include <filesystem>
#include <stdexcept>

#include <nlohmann/json_fwd.hpp>

#include "tangential/hoischen.hpp"

namespace tangential::cli {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spec-file document -> validated ApproximationSpec. Unknown keys, wrong
/// types and out-of-range values throw SpecError (expression syntax errors
/// surface as ParseError).
ApproximationSpec spec_from_json(const nlohmann::json& doc);

ApproximationSpec load_spec(const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace tangential::cli
