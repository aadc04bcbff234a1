#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace surfemb::repro {

struct Options {
    std::string catalog_dir;
    std::uint64_t seed = 20260811;
    bool verbose = false;
};

/// Runs the full reproduction suite (one line per claim, PASS/FAIL plus the
/// measured quantity and runtime). Returns the number of failed checks.
int run_all(const Options& opt, std::ostream& out);

/// Default catalog location: $SURFEMB_CATALOG, else the build-time data dir.
std::string default_catalog_dir();

}  // namespace surfemb::repro
