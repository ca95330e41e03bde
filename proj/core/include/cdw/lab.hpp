#pragma once

#include <filesystem>
#include <functional>
#include <ostream>

#include "cdw/config.hpp"

namespace cdw::lab {

// Writes through a sibling temp file and renames it over `path`, so a
// reader never sees a partial artifact. Throws Error("io", ...) on failure.
void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

// Runs the configured experiment and writes its CSV to cfg.output_path.
// Returns 0 on success, 1 on a domain/convergence/numerical error, 2 on a
// config error; failures print one `error: <code>: <detail>` line to diag.
int run(const RunConfig& cfg, std::ostream& diag);

// Same dispatch, but the CSV goes to `out` and errors propagate.
void run_to_stream(const RunConfig& cfg, std::ostream& out);

}  // namespace cdw::lab
