#pragma once

#include <string_view>

// Built-in copies of the shipped data files (lexicons, prompt templates,
// ontology token lists). The files under data/ stay authoritative and
// editable; tests pin the embedded copies to them.
namespace vrc::builtin {

std::string_view qie_synonyms();
std::string_view qie_categories();
std::string_view qie_relations();
std::string_view qie_comparators();
std::string_view qie_constraints();
std::string_view prompt_spatial();
std::string_view prompt_direct();
std::string_view prompt_comparative();
std::string_view tsr_synonyms();
std::string_view tsr_rewordings();
std::string_view ontology_shapes();
std::string_view ontology_colors();
std::string_view ontology_towards();

} // namespace vrc::builtin
