#pragma once

#include <string>
#include <vector>

namespace qdmol {

enum class Fault {
    none,
    dissipator_sign,  // flips the jump term sign via testhooks::flip_dissipator_sign
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Full invariant suite over the shipped generators: structural Lindblad
/// checks, closed-form/ODE cross-validation, steady-state properties, and the
/// qualitative drive trends. Deterministic for a fixed seed. An injected
/// fault must turn at least one check red (mutation coverage of the suite).
std::vector<CheckResult> run_validation_suite(Fault fault = Fault::none,
                                              unsigned seed = 20240811);

}  // namespace qdmol
