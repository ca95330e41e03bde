#pragma once

#include <ostream>

namespace cdw::cli {

// Full `cdw-lab` entry point; returns the process exit status.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cdw::cli
