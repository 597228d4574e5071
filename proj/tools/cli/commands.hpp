#pragma once

#include <filesystem>
#include <iosfwd>

namespace tangential::cli {

enum ExitCode : int { kPass = 0, kError = 1, kCertificationFailure = 2 };

/// Runs the pipeline and writes the artifact; the artifact is written even
/// when its certificate fails.
int run_approximate(const std::filesystem::path& spec, const std::filesystem::path& out, std::ostream& log,
                    std::ostream& err);

/// Re-certifies the artifact's g against the spec, ignoring the stored
/// certificate, and prints the per-derivative maxima.
int run_certify(const std::filesystem::path& artifact, const std::filesystem::path& spec, std::ostream& log,
                std::ostream& err);

/// CSV of f^(d), g^(d), eps and |f^(d) - g^(d)| on the certification grid.
int run_dump(const std::filesystem::path& artifact, const std::filesystem::path& spec,
             const std::filesystem::path& csv, int deriv, std::ostream& log, std::ostream& err);

}  // namespace tangential::cli
