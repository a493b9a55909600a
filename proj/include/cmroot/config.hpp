#pragma once

#include <string>

#include "cmroot/error.hpp"

namespace cmroot {

// Runtime knobs shared by the CLI subcommands.  The random seed feeds the
// factorization rho walk only; everything else is deterministic.
struct RunConfig {
    int precision = 30;          // significant digits carried in reports
    long norm_bound = 100000;    // prime scan bound for searches
    long effort_cap = 1000000;   // residue field size cap (counting, Gauss sums)
    int threads = 1;
    unsigned long seed = 1;
    std::string out_path;        // empty: stdout
    std::string format = "json"; // json|csv
    bool exclude_unit_q = false;

    void validate() const {
        if (precision < 15) fail(Errc::usage, "precision must be at least 15 digits");
        if (norm_bound <= 0 || effort_cap <= 0) fail(Errc::usage, "caps must be positive");
        if (threads < 1) fail(Errc::usage, "threads must be >= 1");
        if (format != "json" && format != "csv") fail(Errc::usage, "format must be json or csv");
    }
};

} // namespace cmroot
