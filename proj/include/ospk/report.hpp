#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace ospk {

// Result of an exact identity check. `witness` describes the first nonzero
// residual entry (1-based flattened row/column) when the check fails.
struct VerifyReport {
    std::string identity;
    std::string algebra;
    bool ok = false;
    std::optional<std::string> witness;
    int max_degree = 0;
    double elapsed_ms = 0;
};

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace ospk
