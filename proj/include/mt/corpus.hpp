#pragma once

#include <random>
#include <string>
#include <vector>

#include "mt/core.hpp"
#include "mt/dims.hpp"
#include "mt/prefs.hpp"

namespace mt {

HypothesisClass warmuth_class();
HypothesisClass appendix_class();
// All 2^k rows in ascending binary order; instance j is bit k-1-j of the row index.
HypothesisClass powerset_class(std::size_t k);

struct NamedSigma {
    std::string name, class_name, description;
    PreferenceFunction sigma;
};

struct NamedTeacherMap {
    std::string name, class_name, description;
    TeacherMap map;
};

struct NamedArtifact {
    std::string kind;  // class | sigma | teacher-map
    std::string name;
    std::string description;
};

std::vector<NamedSigma> bundled_sigmas();
std::vector<NamedTeacherMap> bundled_teacher_maps();
std::vector<NamedArtifact> list_artifacts();

// "warmuth", "appendix" or "powerset-K".
HypothesisClass builtin_class(const std::string& name);
bool is_builtin_class(const std::string& name);
const NamedSigma& builtin_sigma(const std::string& name);
const NamedTeacherMap& builtin_teacher_map(const std::string& name);

// Uniform rows with rejection of duplicates; needs n_hyp <= 2^n_inst.
HypothesisClass random_class(std::mt19937_64& rng, std::size_t n_hyp, std::size_t n_inst);

}  // namespace mt
